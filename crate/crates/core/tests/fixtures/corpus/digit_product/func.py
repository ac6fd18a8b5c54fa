def digitProduct(n):
    p = 1
    while n > 0:
        p *= n % 10
        n = n // 10
    return p
