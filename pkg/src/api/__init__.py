"""
API package - routers mounted under /api.
"""

from fastapi import APIRouter

from src.api.routes import rank_routes, verify_routes

api_router = APIRouter(prefix="/api")
api_router.include_router(rank_routes.router, tags=["ranks"])
api_router.include_router(verify_routes.router, tags=["verify"])

__all__ = ["api_router"]
