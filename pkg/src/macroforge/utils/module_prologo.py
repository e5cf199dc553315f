# ---------------------------------------------------------------------------
# Name:        module_prologo.py
# Purpose:     Common start/stop of every CLI job
#
# Created:     03/02/2026
# ---------------------------------------------------------------------------

import sys
from ..cli.module_log import set_log_debug, set_log_info, set_log_warning
from ..cli.module_version import get_version
from .filesystem import now, total_seconds_from
from .module_status import set_status


def prologo(version, verbose, debug, job="job"):
    """
    prologo - set log level, handle --version, report the job start
    """
    t = now()

    if debug:
        set_log_debug()
    elif verbose:
        set_log_info()
    else:
        set_log_warning()

    if version:
        print(f"Version: {get_version()}")
        sys.exit(0)

    set_status(0, f"Starting {job}...")
    return t


def epilogo(t, job="job"):
    """
    epilogo - report the elapsed time
    """
    elapsed = total_seconds_from(t)
    set_status(100, f"{job.capitalize()} completed in {elapsed:.2f}s.")
    return elapsed
