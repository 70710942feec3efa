import os
from pathlib import Path

from dotenv import load_dotenv

# Сначала .env рядом с пакетом, потом .env из текущей директории (переменные окружения не перетираются)
env_path = Path(__file__).resolve().parent / ".env"
if env_path.exists():
    load_dotenv(dotenv_path=env_path)

load_dotenv()


def get_int_env(name: str, default: int) -> int:
    """Get an integer environment variable or fall back to the default."""
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {value!r}.") from e


def get_float_env(name: str, default: float) -> float:
    """Get a float environment variable or fall back to the default."""
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return float(value)
    except ValueError as e:
        raise ValueError(f"{name} must be a number, got {value!r}.") from e


BASE_DIR: Path = Path(__file__).resolve().parent.parent
# branchon/
STORAGE_DIR: Path = BASE_DIR / "storage"
OUTPUT_DIR: Path = Path(os.getenv("BRANCHON_OUTPUT_DIR", str(STORAGE_DIR / "runs")))

# Потолок внутреннего параллелизма (ветки, уровни и т.п.)
BRANCHON_THREADS = max(1, get_int_env("BRANCHON_THREADS", os.cpu_count() or 1))

LOG_LEVEL = os.getenv("BRANCHON_LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("BRANCHON_LOG_FILE", "")

# Порог |x|, |v| после которого траектория считается ушедшей в сингулярность
BLOWUP_BOUND = get_float_env("BRANCHON_BLOWUP_BOUND", 1e9)
# Насколько близко к полюсу отображения импульса можно подойти
POLE_EPSILON = get_float_env("BRANCHON_POLE_EPSILON", 1e-8)
