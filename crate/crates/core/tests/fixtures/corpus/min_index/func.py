def minIndex(arr):
    best = 0
    for i in range(1, len(arr)):
        if arr[i] < arr[best]:
            best = i
    return best
