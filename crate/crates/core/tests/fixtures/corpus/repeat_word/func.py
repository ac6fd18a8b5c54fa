def repeatWord(w, n):
    r = ""
    for i in range(n):
        r += w
    return r
