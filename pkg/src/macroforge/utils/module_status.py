# -----------------------------------------------------------------------------
# Name:        module_status.py
# Purpose:     Progress reporting for long simulation jobs
#
# Created:     03/02/2026
# -----------------------------------------------------------------------------
from ..cli.module_log import Logger


def status_label(progress):
    """
    status_label - pending / running / done / error for a progress value
    """
    progress = int(progress)
    if progress < 0:
        return "error"
    if progress == 0:
        return "pending"
    if progress >= 100:
        return "done"
    return "running"


def set_status(progress, message=""):
    """
    set_status - log a progress update; negative progress is an error
    """
    label = status_label(progress)
    if message and progress >= 0:
        Logger.debug(f"[{label} {int(progress):3d}%] {message}")
    elif message:
        Logger.error(f"[{label}] {message}")
    return label


def progress_of(done, total):
    """
    progress_of - integer percent clamped to 1..99 while a job is running
    """
    if total <= 0:
        return 1
    return min(99, max(1, int(100 * done / total)))
