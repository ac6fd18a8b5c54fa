def triangleKind(a, b, c):
    if a == b and b == c:
        return 3
    if a == b or b == c or a == c:
        return 2
    if a + b <= c:
        return 0
    return 1
