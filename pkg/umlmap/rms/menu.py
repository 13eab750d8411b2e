"""Console protocol of the RMS: login, role-filtered menu, continue prompt.

Prompts go to the output stream and answers come one per line from the input
stream, so a whole session can be scripted.
"""
import logging
from collections import namedtuple

from umlmap.rms import render_template
from umlmap.rms.errors import LOGIN_FAILED, RmsError
from umlmap.rms.models import Role
from umlmap.rms.routes.admin import view_orders
from umlmap.rms.routes.auth import authenticate
from umlmap.rms.routes.researcher import check_balance, commit_order, display_details

logger = logging.getLogger(__name__)

LOGOUT = 0

Activity = namedtuple("Activity", ["key", "label", "usecase", "handler"])


class EndOfInput(Exception):
    pass


class Console:
    def __init__(self, stdin, stdout):
        self.stdin = stdin
        self.stdout = stdout

    def ask(self, prompt: str) -> str:
        self.stdout.write(prompt)
        self.stdout.flush()
        line = self.stdin.readline()
        if not line:
            raise EndOfInput()
        return line.rstrip("\r\n")

    def say(self, text: str = ""):
        self.stdout.write(text if text.endswith("\n") else text + "\n")


# ----------------------------
# Activities
# ----------------------------
def _commit(console, session, store, records):
    detail = console.ask("Order detail: ")
    amount = console.ask("Amount: ").strip()
    balance = commit_order(session, detail, amount, store)
    records[:] = [session.record if r.voteno == session.record.voteno else r for r in records]
    console.say(f"Order recorded. Balance: {balance}")


def _check_balance(console, session, store, records):
    console.say(f"Balance: {check_balance(session)}")


def _display_details(console, session, store, records):
    console.say(display_details(session))


def _view_orders(console, session, store, records):
    console.say(view_orders(session, store))


ACTIVITIES = {
    Role.RESEARCHER: (
        Activity(1, "Commit", "Commit", _commit),
        Activity(2, "Check balance", "CheckBalance", _check_balance),
        Activity(3, "Display details", "DisplayDetails", _display_details),
    ),
    Role.ADMIN: (
        Activity(1, "View orders", "ViewOrder", _view_orders),
    ),
}


# ----------------------------
# Prompts
# ----------------------------
def get_activity_type(console: Console, role: Role) -> int:
    """Show the role's menu until a listed number is entered."""
    activities = ACTIVITIES[role]
    choices = [(a.key, a.label) for a in activities] + [(LOGOUT, "Logout")]
    valid = {str(key) for key, _ in choices}
    while True:
        console.say(render_template("menu.txt", title=f"{role.value.title()} menu", choices=choices))
        answer = console.ask("Choice: ").strip()
        if answer in valid:
            return int(answer)
        console.say("Invalid choice.")


def get_another_act(console: Console) -> str:
    while True:
        answer = console.ask("Another activity? (y/n): ").strip().lower()
        if answer in ("y", "n"):
            return answer
        console.say("Please answer y or n.")


def login(console: Console, records, attempts: int):
    for attempt in range(1, attempts + 1):
        voteno = console.ask("Vote number: ").strip()
        password = console.ask("Password: ")
        session = authenticate(voteno, password, records)
        if session is not None:
            console.say(f"Welcome, {session.record.name}.")
            return session
        failure = RmsError(LOGIN_FAILED,
                           f"invalid vote number or password ({attempts - attempt} attempt(s) left)")
        console.say(f"Error [{failure.code}]: {failure}")
    return None


def run_menu_loop(records, streams, *, store, attempts: int = 3) -> int:
    """Run one session. Returns 0 on logout, 'n' or end of input; 1 after failed logins."""
    console = Console(*streams)
    records = list(records) if not isinstance(records, list) else records
    try:
        session = login(console, records, attempts)
        if session is None:
            console.say("Too many failed login attempts.")
            logger.warning("session ended after %d failed login(s)", attempts)
            return 1
        by_key = {a.key: a for a in ACTIVITIES[session.role]}
        while True:
            choice = get_activity_type(console, session.role)
            if choice == LOGOUT:
                break
            try:
                by_key[choice].handler(console, session, store, records)
            except RmsError as exc:
                console.say(f"Error [{exc.code}]: {exc}")
            if get_another_act(console) == "n":
                break
    except EndOfInput:
        logger.info("input closed")
        return 0
    console.say("Goodbye.")
    return 0
