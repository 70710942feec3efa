class BranchonError(Exception):
    """Базовая ошибка пакета."""

    pass


# --- Ошибки входных данных (CLI: код выхода 2) ---
class InputError(BranchonError):
    """Некорректные входные данные или параметры."""

    pass


class DomainError(InputError):
    """Аргумент вне области определения ветви (знак импульса, точка ветвления и т.п.)."""

    pass


class SingularInput(InputError):
    """Аргумент попал ровно в полюс лагранжиана или отображения импульса."""

    pass


class DegenerateParameter(InputError):
    """Параметр, при котором формула вырождается (например, k = 0)."""

    pass


class GridTooCoarse(InputError):
    """Сетка слишком грубая для дискретизации радиальной задачи."""

    pass


class ConfigError(InputError):
    """Ошибка конфигурации запуска."""

    pass


# --- Численные ошибки (CLI: код выхода 3) ---
class NumericalError(BranchonError):
    """Численная проверка или сходимость не прошла."""

    pass


class NotConverged(NumericalError):
    """Последовательные уточнения расходятся сильнее допуска."""

    pass


class QuadratureNotConverged(NumericalError):
    """Удвоение узлов квадратуры сдвигает матричный элемент сильнее допуска."""

    pass


class BasisTooSmall(NumericalError):
    """Удвоение базиса сдвигает коэффициенты ряда сильнее допуска."""

    pass


class BlowUp(NumericalError):
    """Траектория ушла за границу |x|, |v| (уход в сингулярную область)."""

    pass


class PoleCrossing(NumericalError):
    """Отсчёт траектории слишком близко к полюсу отображения импульса."""

    pass


class CheckFailed(NumericalError):
    """Контрольная проверка запуска не прошла."""

    pass
