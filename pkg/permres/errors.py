class PermresError(Exception):
    """Base class; `exit_code` is what the CLI exits with."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class SpecError(PermresError, ValueError):
    pass


class ParseError(SpecError):
    def __init__(self, detail: str, text: str = "", position: int = 0):
        super().__init__(f"{detail} at position {position}: {text!r}")
        self.text = text
        self.position = position


class GroupError(PermresError, ValueError):
    pass


class DomainError(PermresError, ValueError):
    pass


class ConventionError(DomainError):
    pass


class VerificationFailed(PermresError, RuntimeError):
    exit_code = 1


class IdentityViolation(PermresError, AssertionError):
    exit_code = 3


def ensure(condition: bool, detail: str):
    """Raise IdentityViolation unless `condition` holds."""
    if not condition:
        raise IdentityViolation(detail)
