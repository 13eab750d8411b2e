import enum
from dataclasses import dataclass, replace

# Fixed capacities of the System.Data and Order.OrderData records; one slot
# of each is the terminator, so usable length is capacity - 1.
NAME_CAPACITY = 20
VOTENO_CAPACITY = 8
PASSWORD_CAPACITY = 7
ORDER_NAME_CAPACITY = 25
ORDER_DETAIL_CAPACITY = 25


class Role(enum.Enum):
    RESEARCHER = "researcher"
    ADMIN = "admin"

    @property
    def code(self) -> str:
        """Single-letter value stored in the researchers file."""
        return "A" if self is Role.ADMIN else "R"

    @classmethod
    def from_code(cls, code: str) -> "Role":
        return cls.ADMIN if code == "A" else cls.RESEARCHER


# ----------------------------
# Records
# ----------------------------
@dataclass(frozen=True)
class ResearcherRecord:
    name: str
    voteno: str
    allocation: int
    balance: int
    password: str
    role: Role = Role.RESEARCHER

    def __post_init__(self):
        if not 0 <= self.balance <= self.allocation:
            raise ValueError(
                f"balance {self.balance} outside 0..{self.allocation} for {self.voteno}")

    def with_balance(self, balance: int) -> "ResearcherRecord":
        return replace(self, balance=balance)

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "voteno": self.voteno,
            "allocation": self.allocation,
            "balance": self.balance,
            "password": self.password,
            "role": self.role.code,
        }


@dataclass(frozen=True)
class OrderRecord:
    name: str
    voteno: str
    order_detail: str
    amount: int

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "voteno": self.voteno,
            "order_detail": self.order_detail,
            "amount": self.amount,
        }


@dataclass
class Session:
    """The logged-in user. `record` is replaced after every accepted commit."""
    record: ResearcherRecord

    @property
    def role(self) -> Role:
        return self.record.role

    @property
    def balance(self) -> int:
        return self.record.balance
