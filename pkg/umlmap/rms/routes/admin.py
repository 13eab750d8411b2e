"""Order file access: RecordOrder and the administrator's ViewOrder."""
from umlmap.rms import render_template
from umlmap.rms.errors import IO_NOT_FOUND, RmsError
from umlmap.rms.models import OrderRecord, Session
from umlmap.rms.routes.auth import admin_required


def record_order(store, order: OrderRecord):
    store.append_order(order)


@admin_required
def view_orders(session: Session, store) -> str:
    try:
        orders = store.load_orders()
    except RmsError as exc:
        # first run: no order file yet
        if exc.code != IO_NOT_FOUND:
            raise
        orders = []
    return render_template("orders.txt", orders=orders)
