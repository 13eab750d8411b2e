"""Research Management System: the console application the RMS model describes."""
import logging
import sys

from jinja2 import Environment, PackageLoader, StrictUndefined

from config import Config

logger = logging.getLogger(__name__)

# --- Screen Templates ---
# Created at import time so route modules can `from umlmap.rms import render_template`.
templates = Environment(
    loader=PackageLoader("umlmap.rms", "templates"),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
    autoescape=False,
)


def render_template(name: str, /, **context) -> str:
    return templates.get_template(name).render(**context)


class RmsApp:
    """Configured application; `run` drives one console session."""

    def __init__(self, config):
        from .storage import FlatFileStore

        self.config = config
        self.store = FlatFileStore(config.RESEARCHERS_FILE, config.ORDERS_FILE)

    def run(self, stdin=None, stdout=None) -> int:
        from .errors import RmsError
        from .menu import run_menu_loop

        stdin = stdin or sys.stdin
        stdout = stdout or sys.stdout
        try:
            records = self.store.load_researchers()
        except RmsError as exc:
            logger.error("cannot load researchers: %s", exc)
            stdout.write(f"Error [{exc.code}]: {exc}\n")
            return 1
        return run_menu_loop(records, (stdin, stdout), store=self.store,
                             attempts=self.config.LOGIN_ATTEMPTS)


def create_app(config_class=Config) -> RmsApp:
    """Application Factory Function"""
    return RmsApp(config_class)
