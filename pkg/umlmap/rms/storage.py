"""CSV flat-file persistence for researchers and orders.

researchers: name,voteno,allocation,balance,password,role   (role R or A)
orders:      name,voteno,order_detail,amount                (append-only)

Row numbers in errors count data rows from 1; the header is not a row.
"""
import logging
import os
import re
import tempfile
from pathlib import Path

import pandas as pd

from umlmap.rms.errors import IO_NOT_FOUND, IO_UNREADABLE, ROW_MALFORMED, RmsError
from umlmap.rms.forms import OrderRowForm, ResearcherRowForm
from umlmap.rms.models import OrderRecord, ResearcherRecord, Role

logger = logging.getLogger(__name__)

RESEARCHER_COLUMNS = ["name", "voteno", "allocation", "balance", "password", "role"]
ORDER_COLUMNS = ["name", "voteno", "order_detail", "amount"]

_FIELD_COUNT = re.compile(r"Expected \d+ fields in line (\d+)")


def read_table(path, columns):
    """Read a CSV as text cells. Raises RmsError for an unreadable file or bad shape."""
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError as exc:
        logger.error("data file not found: %s", path)
        raise RmsError(IO_NOT_FOUND, f"file not found: {path}") from exc
    except (OSError, UnicodeDecodeError) as exc:
        logger.error("cannot read %s: %s", path, exc)
        raise RmsError(IO_UNREADABLE, f"cannot read {path}: {exc}") from exc
    except pd.errors.EmptyDataError as exc:
        raise RmsError(ROW_MALFORMED, f"{path}: missing header line") from exc
    except pd.errors.ParserError as exc:
        match = _FIELD_COUNT.search(str(exc))
        row = int(match.group(1)) - 1 if match else None
        raise RmsError(ROW_MALFORMED, f"{path}: wrong number of fields", row=row) from exc
    if list(frame.columns) != columns:
        raise RmsError(ROW_MALFORMED, f"{path}: header must be {','.join(columns)}")
    return frame.fillna("")


def _write_atomic(path: Path, frame):
    """Write to a sibling temporary file, then rename over `path`."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp",
        delete=False, encoding="utf-8", newline="")
    try:
        with handle:
            frame.to_csv(handle, index=False, lineterminator="\n")
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise


class FlatFileStore:
    def __init__(self, researchers_path, orders_path):
        self.researchers_path = Path(researchers_path)
        self.orders_path = Path(orders_path)

    # ----------------------------
    # Researchers
    # ----------------------------
    def load_researchers(self):
        """All researcher rows; the whole file is rejected on the first bad row."""
        frame = read_table(self.researchers_path, RESEARCHER_COLUMNS)
        records, seen = [], set()
        for index, row in enumerate(frame.to_dict("records"), start=1):
            form = ResearcherRowForm.from_mapping(row).checked(row=index)
            if form.voteno.data in seen:
                raise RmsError(ROW_MALFORMED, f"duplicate vote number {form.voteno.data}", row=index)
            seen.add(form.voteno.data)
            records.append(ResearcherRecord(
                name=form.name.data,
                voteno=form.voteno.data,
                allocation=form.allocation.data,
                balance=form.balance.data,
                password=form.password.data,
                role=Role.from_code(form.role.data),
            ))
        logger.info("loaded %d researcher(s) from %s", len(records), self.researchers_path)
        return records

    def save_researchers(self, records):
        frame = pd.DataFrame([r.to_row() for r in records], columns=RESEARCHER_COLUMNS)
        _write_atomic(self.researchers_path, frame)

    def replace_researcher(self, record: ResearcherRecord):
        """Rewrite the researchers file with `record` swapped in by vote number."""
        records = [record if r.voteno == record.voteno else r for r in self.load_researchers()]
        self.save_researchers(records)
        return records

    # ----------------------------
    # Orders
    # ----------------------------
    def load_orders(self):
        """Orders in file order; a missing or empty file means none yet."""
        if not self.orders_path.exists() or self.orders_path.stat().st_size == 0:
            return []
        frame = read_table(self.orders_path, ORDER_COLUMNS)
        orders = []
        for index, row in enumerate(frame.to_dict("records"), start=1):
            form = OrderRowForm.from_mapping(row).checked(row=index)
            orders.append(OrderRecord(form.name.data, form.voteno.data,
                                      form.order_detail.data, form.amount.data))
        return orders

    def append_order(self, order: OrderRecord):
        needs_header = not self.orders_path.exists() or self.orders_path.stat().st_size == 0
        self.orders_path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame([order.to_row()], columns=ORDER_COLUMNS)
        frame.to_csv(self.orders_path, mode="a", header=needs_header, index=False,
                     lineterminator="\n", encoding="utf-8")
        logger.info("appended order for %s (%d)", order.voteno, order.amount)
