# -------------------------------------------------------------------------------
# Name:        filesystem.py
# Purpose:     Path and timing helpers shared by exporters and the CLI
#
# Created:     03/02/2026
# -------------------------------------------------------------------------------

import os
import datetime


def now():
    """
    now
    """
    return datetime.datetime.now()


def total_seconds_from(t):
    """
    total_seconds_from
    """
    return (datetime.datetime.now() - t).total_seconds()


def normpath(pathname):
    """
    normpath
    """
    if not pathname:
        return ""
    return os.path.normpath(str(pathname).replace("\\", "/")).replace("\\", "/")


def justpath(pathname):
    """
    justpath - the directory part, "." when there is none
    """
    pathname, _ = os.path.split(normpath(pathname))
    return pathname or "."


def justext(pathname):
    """
    justext - lowercase extension without the dot
    """
    (_, ext) = os.path.splitext(os.path.basename(normpath(pathname)))
    return ext.lstrip(".").lower()


def forceext(pathname, newext):
    """
    forceext
    """
    (root, _) = os.path.splitext(normpath(pathname))
    newext = newext.lstrip(".")
    return normpath(root + ("." + newext if newext.strip() else ""))


def mkdirs(pathname):
    """
    mkdirs - create the parent folder of a file path
    """
    folder = justpath(pathname)
    os.makedirs(folder, exist_ok=True)
    return os.path.isdir(folder)

