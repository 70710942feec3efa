from branchon.cli import App

from .classical import router as classical_router
from .quantum import router as quantum_router


def setup_routers(app: App) -> None:
    app.include_router(classical_router)
    app.include_router(quantum_router)
