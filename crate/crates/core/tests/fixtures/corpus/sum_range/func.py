def sumRange(a, b):
    s = 0
    for i in range(a, b + 1):
        s += i
    return s
