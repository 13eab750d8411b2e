import logging
from functools import wraps

from umlmap.rms.errors import ROLE_FORBIDDEN, RmsError
from umlmap.rms.models import Role, Session

logger = logging.getLogger(__name__)


def authenticate(voteno: str, password: str, records):
    """Session for the record matching both values exactly, else None."""
    for record in records:
        if record.voteno == voteno and record.password == password:
            logger.info("login %s as %s", voteno, record.role.value)
            return Session(record)
    logger.info("failed login for %r", voteno)
    return None


# --- Role Protection Decorators ---
def role_required(role: Role):
    def decorator(f):
        @wraps(f)
        def decorated_function(session, *args, **kwargs):
            if session.role is not role:
                # Console counterpart of a 403
                raise RmsError(ROLE_FORBIDDEN,
                               f"{f.__name__} is not available to the {session.role.value} role")
            return f(session, *args, **kwargs)
        return decorated_function
    return decorator


researcher_required = role_required(Role.RESEARCHER)
admin_required = role_required(Role.ADMIN)
