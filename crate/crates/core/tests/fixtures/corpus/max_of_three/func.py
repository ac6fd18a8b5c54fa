def maxOfThree(a, b, c):
    m = a
    if b > m:
        m = b
    if c > m:
        m = c
    return m
