from typing import Any, Dict, Optional


class KleisliError(Exception):
    exit_code = 2

    def __init__(self, message: str, error_code: str = "KLEISLI_ERROR") -> None:
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.error_code, "message": self.message}


class StructuralError(KleisliError):
    def __init__(
        self, message: str = "Malformed table", error_code: str = "STRUCTURAL_ERROR"
    ):
        super().__init__(message, error_code)


class UnknownCellError(StructuralError):
    def __init__(self, message: str = "Unknown identifier"):
        super().__init__(message, "UNKNOWN_ID")


class IllTypedPastingError(StructuralError):
    def __init__(self, message: str = "Ill-typed pasting expression", node: Any = None):
        self.node = node
        super().__init__(message, "ILL_TYPED_PASTING")


class SerializationError(StructuralError):
    def __init__(self, message: str = "Invalid document"):
        super().__init__(message, "SERIALIZATION_ERROR")


class SizeGuardError(KleisliError):
    def __init__(
        self,
        message: str = "Search space exceeds the enumeration guard",
        search_space: int = 0,
        bound: int = 0,
        context: Optional[str] = None,
    ):
        self.search_space = search_space
        self.bound = bound
        self.context = context
        super().__init__(message, "SIZE_GUARD")

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data.update(
            {"search_space": self.search_space, "bound": self.bound, "context": self.context}
        )
        return data


class LawViolationError(KleisliError):
    exit_code = 1

    def __init__(
        self,
        message: str = "Law violation",
        report: Any = None,
        error_code: str = "LAW_VIOLATION",
    ):
        self.report = report
        super().__init__(message, error_code)

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        if self.report is not None:
            data["report"] = self.report.to_dict()
        return data


class FactorisationError(LawViolationError):
    def __init__(self, message: str = "No factorisation through the unit exists"):
        super().__init__(message, None, "NO_FACTORISATION")


class TheoremDisagreementError(KleisliError):
    exit_code = 3

    def __init__(
        self, message: str = "Characterisation conditions disagree", profile: Any = None
    ):
        self.profile = profile
        super().__init__(message, "THEOREM_DISAGREEMENT")


class ConfigurationError(KleisliError):
    def __init__(self, message: str = "Invalid configuration"):
        super().__init__(message, "CONFIG_ERROR")
