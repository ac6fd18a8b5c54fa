def triangularPairs(n):
    c = 0
    for i in range(n):
        for j in range(i):
            c += 1
    return c
