import argparse
import sys
import types
import typing
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from branchon.exceptions import CheckFailed, ConfigError, InputError, NumericalError
from branchon.models.config import COMMANDS, Command, RunConfig
from branchon.services.export import Cell, config_fingerprint, write_table
from core.config import OUTPUT_DIR
from core.logger import logger

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

_SKIPPED_FIELDS = {"command", "config"}


@dataclass(slots=True)
class CommandResult:
    """Результат команды: таблица для файла, сводка для stdout и, при провале проверки, её описание."""

    columns: tuple[str, ...]
    rows: list[tuple[Cell, ...]]
    summary: str
    failure: str | None = None


Handler = Callable[[RunConfig], CommandResult]


@dataclass(slots=True)
class CommandRouter:
    """Набор команд одной области; подключается к приложению через `include_router`."""

    tags: list[str] = field(default_factory=list)
    handlers: dict[Command, Handler] = field(default_factory=dict)
    descriptions: dict[Command, str] = field(default_factory=dict)

    def command(self, name: Command, description: str = "") -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            if name in self.handlers:
                raise ValueError(f"Command {name!r} is already registered")
            self.handlers[name] = handler
            self.descriptions[name] = description or (handler.__doc__ or "").strip().splitlines()[0]
            return handler

        return decorator


def _is_bool(annotation: Any) -> bool:
    if annotation is bool:
        return True
    if isinstance(annotation, types.UnionType) or typing.get_origin(annotation) is typing.Union:
        return bool in typing.get_args(annotation)
    return False


def config_keys() -> dict[str, bool]:
    """Ключи конфигурации (алиас или имя поля) -> является ли ключ флагом-переключателем."""
    return {
        info.alias or name: _is_bool(info.annotation)
        for name, info in RunConfig.model_fields.items()
        if name not in _SKIPPED_FIELDS
    }


def flag_name(key: str) -> str:
    return "--" + key.replace(".", "-").replace("_", "-")


def parse_config_file(path: Path) -> dict[str, str]:
    """
    Файл key=value: одна пара на строку, `#` - комментарий.

    Raises:
        ConfigError: файла нет или строка не в формате key=value.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e

    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"{path}:{number}: expected key=value, got {raw!r}")
        values[key.strip()] = value.strip()
    return values


class App:
    def __init__(self, prog: str = "branchon") -> None:
        self.prog = prog
        self.handlers: dict[Command, Handler] = {}
        self.descriptions: dict[Command, str] = {}

    def include_router(self, router: CommandRouter) -> None:
        for name, handler in router.handlers.items():
            if name in self.handlers:
                raise ValueError(f"Command {name!r} is registered twice")
            self.handlers[name] = handler
            self.descriptions[name] = router.descriptions[name]

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog=self.prog,
            description="Branched Hamiltonians of the cubic Liénard oscillator: classical and quantum checks.",
        )
        commands = parser.add_subparsers(dest="command", required=True)
        for name in COMMANDS:
            if name not in self.handlers:
                continue
            sub = commands.add_parser(name, help=self.descriptions[name])
            sub.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="key=value file read before flags")
            for key, is_switch in config_keys().items():
                if is_switch:
                    sub.add_argument(flag_name(key), dest=key, action="store_true", default=argparse.SUPPRESS)
                else:
                    sub.add_argument(flag_name(key), dest=key, default=argparse.SUPPRESS, metavar="VALUE")
        return parser

    def parse(self, argv: Sequence[str] | None = None) -> RunConfig:
        """Флаги командной строки поверх файла конфигурации."""
        namespace = vars(self.build_parser().parse_args(argv))
        command = namespace.pop("command")
        values: dict[str, Any] = {}
        config_path = namespace.get("config")
        if config_path is not None:
            values.update(parse_config_file(config_path))
        values.update(namespace)
        values["command"] = command
        return RunConfig.model_validate(values)

    def output_path(self, config: RunConfig) -> Path:
        if config.out is not None:
            return config.out
        fingerprint = config_fingerprint(config.resolved())
        return OUTPUT_DIR / f"{config.command}-{fingerprint[:8]}.{config.format}"

    def run(self, config: RunConfig) -> CommandResult:
        """
        Выполняет команду, пишет таблицу и печатает сводку.

        Raises:
            CheckFailed: контрольная проверка команды не прошла (файл всё равно записан).
        """
        handler = self.handlers[config.command]
        logger.info(f"Running {config.command}")
        result = handler(config)
        path = self.output_path(config)
        write_table(path, result.columns, result.rows, config.resolved(), config.format)
        print(result.summary)
        print(f"output: {path}")
        if result.failure is not None:
            raise CheckFailed(result.failure)
        return result

    def main(self, argv: Sequence[str] | None = None) -> int:
        try:
            self.run(self.parse(argv))
        except (ValidationError, InputError) as e:
            logger.error(f"Invalid input: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except NumericalError as e:
            logger.error(f"{type(e).__name__}: {e}")
            print(f"numerical check failed ({type(e).__name__}): {e}", file=sys.stderr)
            return EXIT_NUMERICAL
        return EXIT_OK
