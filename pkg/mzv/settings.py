import os

output_format = os.environ.get("MZV_FORMAT", "text")
default_terms = int(os.environ.get("MZV_TERMS", "2000"))
default_tolerance = float(os.environ.get("MZV_TOL", "5e-3"))
default_jobs = int(os.environ.get("MZV_JOBS", "1"))
default_seed = int(os.environ.get("MZV_SEED", "0"))
LOG_LEVEL = os.environ.get("LOG_LEVEL", "WARNING")
