"""Researcher activities: Commit, CheckBalance, DisplayDetails."""
import logging

from umlmap.rms import render_template
from umlmap.rms.errors import INSUFFICIENT_BALANCE, RmsError
from umlmap.rms.forms import CommitForm
from umlmap.rms.models import OrderRecord, Session
from umlmap.rms.routes.admin import record_order
from umlmap.rms.routes.auth import researcher_required

logger = logging.getLogger(__name__)


@researcher_required
def commit_order(session: Session, detail, amount, store) -> int:
    """Spend `amount` from the session's balance on an order; returns the new balance.

    The researchers file is rewritten before the order row is appended, so a
    failure between the two loses the order row but never the money.
    """
    form = CommitForm.from_mapping({"order_detail": detail, "amount": amount}).checked()
    amount = form.amount.data
    record = session.record
    if amount > record.balance:
        logger.info("rejected commit of %d for %s: balance %d", amount, record.voteno, record.balance)
        raise RmsError(INSUFFICIENT_BALANCE,
                       f"amount {amount} exceeds the remaining balance {record.balance}")

    updated = record.with_balance(record.balance - amount)
    store.replace_researcher(updated)
    session.record = updated
    record_order(store, OrderRecord(record.name, record.voteno, form.order_detail.data, amount))
    logger.info("committed %d for %s, balance now %d", amount, record.voteno, updated.balance)
    return updated.balance


@researcher_required
def check_balance(session: Session) -> int:
    return session.record.balance


@researcher_required
def display_details(session: Session) -> str:
    # never rendered: password
    record = session.record
    return render_template("details.txt", name=record.name, voteno=record.voteno,
                           allocation=record.allocation, balance=record.balance)
