# src/service/backend/app.py

import logging
import os
from typing import Sequence

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
try:
    from .api_endpoints import router as api_router
except ImportError:
    from api_endpoints import router as api_router

logging.basicConfig(level=logging.INFO)

# every endpoint is a read-only GET returning a verification document
READ_ONLY_METHODS = ["GET"]


def allowed_origins() -> Sequence[str]:
    """Comma-separated ALLOWED_ORIGINS, or any origin when unset."""
    raw = os.environ.get("ALLOWED_ORIGINS", "*")
    return [origin.strip() for origin in raw.split(",") if origin.strip()]


def create_app() -> FastAPI:
    service = FastAPI(title="Seifert Family Verification API")
    # no cookies or auth headers: reports are public and computed on demand
    service.add_middleware(
        CORSMiddleware,
        allow_origins=list(allowed_origins()),
        allow_credentials=False,
        allow_methods=READ_ONLY_METHODS,
        allow_headers=["Accept"],
    )
    service.include_router(api_router, prefix="/api")
    return service


app = create_app()

if __name__ == "__main__":
    import uvicorn
    port = int(os.environ.get("PORT", 8000))
    uvicorn.run(app, host="0.0.0.0", port=port)
