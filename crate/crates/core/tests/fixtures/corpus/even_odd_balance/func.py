def evenOddBalance(arr):
    d = 0
    for x in arr:
        if x % 2 == 0:
            d += 1
        else:
            d -= 1
    return d
