def sumArray(arr):
    s = 0
    for x in arr:
        s += x
    return s
