def countPositive(arr):
    c = 0
    for x in arr:
        if x > 0:
            c += 1
    return c
