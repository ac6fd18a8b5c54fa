def shout(s, loud):
    if loud:
        return s.upper()
    return s.lower()
