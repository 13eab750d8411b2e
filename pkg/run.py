import logging
import sys

import click

from config import Config  # Import the Config class
from umlmap.rms import create_app


@click.command()
@click.option("--researchers", type=click.Path(dir_okay=False), help="Researchers CSV (overrides RMS_RESEARCHERS_FILE).")
@click.option("--orders", type=click.Path(dir_okay=False), help="Orders CSV (overrides RMS_ORDERS_FILE).")
@click.option("-v", "--verbose", count=True)
def main(researchers, orders, verbose):
    """Run the Research Management System console."""
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2), stream=sys.stderr)

    # Per-run overrides go on a subclass so Config itself stays untouched.
    config_class = type("RunConfig", (Config,), {
        key: value for key, value in (("RESEARCHERS_FILE", researchers), ("ORDERS_FILE", orders))
        if value is not None
    })
    app = create_app(config_class)
    sys.exit(app.run(sys.stdin, sys.stdout))


if __name__ == '__main__':
    main()
