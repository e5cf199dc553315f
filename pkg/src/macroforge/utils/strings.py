# -----------------------------------------------------------------------------
# Name:        strings.py
# Purpose:     Parsing of comma-separated CLI values
#
# Created:     03/02/2026
# -----------------------------------------------------------------------------


def listify(text, sep=","):
    """
    listify - "a, b,,c" -> ['a', 'b', 'c']; lists and tuples pass through, None is []
    """
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return list(text)
    if isinstance(text, str):
        return [item.strip() for item in text.split(sep) if item.strip()]
    return [text]


def parse_int_list(text):
    """
    parse_int_list - "1000,1" -> [1000, 1]; raises ValueError naming the bad items
    """
    items, bad = [], []
    for item in listify(text):
        try:
            items.append(int(item))
        except (TypeError, ValueError):
            bad.append(item)
    if bad:
        raise ValueError(f'Not integers: {bad}')
    return items
