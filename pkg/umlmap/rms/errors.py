IO_NOT_FOUND = "IO_NOT_FOUND"
IO_UNREADABLE = "IO_UNREADABLE"
ROW_MALFORMED = "ROW_MALFORMED"
FIELD_OVERFLOW = "FIELD_OVERFLOW"
AMOUNT_NONPOSITIVE = "AMOUNT_NONPOSITIVE"
INSUFFICIENT_BALANCE = "INSUFFICIENT_BALANCE"
ROLE_FORBIDDEN = "ROLE_FORBIDDEN"
DETAIL_REQUIRED = "DETAIL_REQUIRED"
LOGIN_FAILED = "LOGIN_FAILED"


class RmsError(Exception):
    """A rejected RMS operation. `row` is the 1-based data row for file errors."""

    def __init__(self, code: str, message: str, row=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.row = row

    def __str__(self):
        where = f" (row {self.row})" if self.row is not None else ""
        return f"{self.message}{where}"
