def maxArray(arr):
    m = arr[0]
    for i in range(1, len(arr)):
        if arr[i] > m:
            m = arr[i]
    return m
