def countdownSum(n):
    s = 0
    for i in range(n, 0, -1):
        s += i * 2
    return s
