from werkzeug.datastructures import MultiDict
from wtforms import Form, IntegerField, StringField
from wtforms.validators import AnyOf, DataRequired, InputRequired, Length, NumberRange, ValidationError

from umlmap.rms.errors import (
    AMOUNT_NONPOSITIVE,
    DETAIL_REQUIRED,
    FIELD_OVERFLOW,
    ROW_MALFORMED,
    RmsError,
)
from umlmap.rms.models import (
    NAME_CAPACITY,
    ORDER_DETAIL_CAPACITY,
    ORDER_NAME_CAPACITY,
    PASSWORD_CAPACITY,
    VOTENO_CAPACITY,
)

# Length messages start with this marker so overflow can be told apart from
# other field errors.
OVERFLOW = "exceeds capacity"


def capacity(size):
    """Fixed-size text field: size - 1 usable characters."""
    return Length(max=size - 1, message=OVERFLOW + ": at most %(max)d characters")


class RmsForm(Form):
    # field name -> code reported when that field fails for a reason other than overflow
    error_codes = {}
    default_code = ROW_MALFORMED

    @classmethod
    def from_mapping(cls, data):
        return cls(formdata=MultiDict({k: "" if v is None else str(v) for k, v in data.items()}))

    def first_error(self, row=None) -> RmsError:
        for field in self:
            if field.errors:
                message = field.errors[0]
                if message.startswith(OVERFLOW):
                    code = FIELD_OVERFLOW
                else:
                    code = self.error_codes.get(field.name, self.default_code)
                return RmsError(code, f"{field.name}: {message}", row=row)
        return RmsError(self.default_code, "invalid input", row=row)

    def checked(self, row=None):
        """Validate and return self, or raise the first field error as RmsError."""
        if not self.validate():
            raise self.first_error(row)
        return self


# ----------------------------
# File Rows
# ----------------------------
class ResearcherRowForm(RmsForm):
    name = StringField('Name', validators=[InputRequired(), capacity(NAME_CAPACITY)])
    voteno = StringField('Vote No', validators=[InputRequired(), capacity(VOTENO_CAPACITY)])
    allocation = IntegerField('Allocation', validators=[InputRequired(), NumberRange(min=0)])
    balance = IntegerField('Balance', validators=[InputRequired(), NumberRange(min=0)])
    password = StringField('Password', validators=[InputRequired(), capacity(PASSWORD_CAPACITY)])
    role = StringField('Role', validators=[InputRequired(), AnyOf(['R', 'A'])])

    def validate_balance(self, balance):
        if balance.data is None or self.allocation.data is None:
            return
        if balance.data > self.allocation.data:
            raise ValidationError('Balance cannot exceed the allocation.')


class OrderRowForm(RmsForm):
    name = StringField('Name', validators=[InputRequired(), capacity(ORDER_NAME_CAPACITY)])
    voteno = StringField('Vote No', validators=[InputRequired(), capacity(VOTENO_CAPACITY)])
    order_detail = StringField('Order Detail', validators=[InputRequired(), capacity(ORDER_DETAIL_CAPACITY)])
    amount = IntegerField('Amount', validators=[InputRequired(), NumberRange(min=1)])


# ----------------------------
# User Input
# ----------------------------
def _strip(value):
    return value.strip() if isinstance(value, str) else value


class CommitForm(RmsForm):
    error_codes = {"order_detail": DETAIL_REQUIRED, "amount": AMOUNT_NONPOSITIVE}

    order_detail = StringField('Order Detail', filters=[_strip], validators=[
        DataRequired(message='An order detail is required.'), capacity(ORDER_DETAIL_CAPACITY)])
    amount = IntegerField('Amount', validators=[
        InputRequired(message='Amount must be a positive whole number.'),
        NumberRange(min=1, message='Amount must be at least %(min)s.')])
