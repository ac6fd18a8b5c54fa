def boundedSum(n):
    i = 0
    s = 0
    while True:
        if i > n:
            break
        s += i
        i += 1
    return s
