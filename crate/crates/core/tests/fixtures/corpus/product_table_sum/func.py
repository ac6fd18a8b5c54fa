def productTableSum(n, m):
    s = 0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            s += i * j
    return s
