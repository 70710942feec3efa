from collections.abc import Callable

import pytest

from branchon.main import main


@pytest.fixture
def run_cli(capsys) -> Callable[..., tuple[int, str]]:
    """
    Запускает CLI как `branchon <args>` и возвращает (код выхода, stdout)
    """

    def _run(*args: str) -> tuple[int, str]:
        code = main(list(args))
        return code, capsys.readouterr().out

    return _run
