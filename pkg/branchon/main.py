import sys
from collections.abc import Sequence

from branchon.cli import App
from branchon.routers import setup_routers
from core.executor import shutdown_executor

app = App()
setup_routers(app)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return app.main(argv)
    finally:
        shutdown_executor()


if __name__ == "__main__":
    sys.exit(main())
