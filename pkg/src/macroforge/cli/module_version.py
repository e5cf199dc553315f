# -----------------------------------------------------------------------------
# Name:        module_version.py
# Purpose:     Package version and machine descriptor for reports
#
# Created:     03/02/2026
# -----------------------------------------------------------------------------
import os
import platform
from importlib.metadata import version, PackageNotFoundError


def get_version():
    """
    get_version - installed version of the top-level package
    """
    try:
        return version(__package__.split('.')[0])
    except PackageNotFoundError:
        return "unknown"


def machine_descriptor():
    """
    machine_descriptor - one-line description of the host, stamped on benchmark rows
    """
    cpu = platform.processor() or platform.machine()
    return f"{platform.system()} {platform.machine()} | {cpu} | {os.cpu_count()} cpus | python {platform.python_version()}"
