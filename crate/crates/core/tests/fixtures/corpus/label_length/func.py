def labelLength(s):
    if len(s) == 0:
        return -1
    return len(s)
