from mzv.cli import main
from mzv.logging import setup_logging

setup_logging()

if __name__ == "__main__":
    main()
