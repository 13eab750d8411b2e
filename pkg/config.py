import os
from dotenv import load_dotenv

# Load environment variables from a .env file
load_dotenv()


class Config:
    """Research Management System configuration.

    The umlmap toolchain itself takes no environment settings; only the
    reference console app reads these.
    """
    RESEARCHERS_FILE = os.environ.get('RMS_RESEARCHERS_FILE') or 'data/researchers.csv'
    ORDERS_FILE = os.environ.get('RMS_ORDERS_FILE') or 'data/orders.csv'
    LOGIN_ATTEMPTS = int(os.environ.get('RMS_LOGIN_ATTEMPTS') or 3)
