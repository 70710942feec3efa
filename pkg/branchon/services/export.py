import csv
import datetime as dt
import io
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import ujson
import xxhash

from branchon.exceptions import ConfigError
from core.logger import logger

OutputFormat = Literal["csv", "json"]
Cell = float | int | str


@dataclass(frozen=True, slots=True)
class Table:
    """Таблица результатов: заголовок, колонки и строки."""

    columns: tuple[str, ...]
    rows: list[tuple[Cell, ...]]
    meta: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> list[Cell]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


def config_fingerprint(config: dict[str, Any]) -> str:
    """xxh64 от канонического JSON конфигурации."""
    return xxhash.xxh64(ujson.dumps(config, sort_keys=True).encode()).hexdigest()


def _format_cell(value: Cell) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _parse_cell(raw: str) -> Cell:
    for parse in (int, float):
        try:
            return parse(raw)
        except ValueError:
            continue
    return raw


def render_table(table: Table, fmt: OutputFormat = "csv") -> str:
    if fmt == "json":
        return ujson.dumps({"meta": table.meta, "columns": list(table.columns), "rows": table.rows}, indent=2)

    buffer = io.StringIO()
    for key, value in table.meta.items():
        payload = value if isinstance(value, str) else ujson.dumps(value, sort_keys=True)
        buffer.write(f"# {key}: {payload}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    writer.writerows([_format_cell(cell) for cell in row] for row in table.rows)
    return buffer.getvalue()


def write_table(
    path: Path,
    columns: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    config: dict[str, Any],
    fmt: OutputFormat = "csv",
) -> Table:
    """
    Пишет таблицу в CSV (комментарии `#` с created_at, конфигурацией и отпечатком) или JSON.
    """
    meta = {
        "created_at": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        "config": config,
        "fingerprint": config_fingerprint(config),
    }
    table = Table(columns=tuple(columns), rows=[tuple(row) for row in rows], meta=meta)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        file.write(render_table(table, fmt))
    logger.info(f"Wrote {len(table.rows)} rows to {path}")
    return table


def read_table(path: Path, expected_columns: Sequence[str] | None = None) -> Table:
    """
    Разбирает файл, записанный `write_table` (формат определяется по содержимому).

    Raises:
        ConfigError: файл повреждён или колонки не совпадают с ожидаемыми.
    """
    with open(path, encoding="utf-8") as file:
        text = file.read()

    if text.lstrip().startswith("{"):
        try:
            document = ujson.loads(text)
        except ujson.JSONDecodeError as e:
            raise ConfigError(f"{path} is not valid JSON: {e}") from e
        try:
            table = Table(
                columns=tuple(document["columns"]),
                rows=[tuple(row) for row in document["rows"]],
                meta=document.get("meta", {}),
            )
        except (KeyError, TypeError) as e:
            raise ConfigError(f"{path} is not a result table: {e}") from e
    else:
        meta: dict[str, Any] = {}
        body: list[str] = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, payload = line[1:].strip().partition(": ")
                meta[key] = ujson.loads(payload) if payload[:1] in ("{", "[") else payload
            elif line:
                body.append(line)
        if not body:
            raise ConfigError(f"{path} has no column header.")
        reader = csv.reader(body)
        columns = tuple(next(reader))
        table = Table(columns=columns, rows=[tuple(_parse_cell(cell) for cell in row) for row in reader], meta=meta)

    if expected_columns is not None and table.columns != tuple(expected_columns):
        raise ConfigError(f"{path}: columns {table.columns} do not match {tuple(expected_columns)}.")
    return table
