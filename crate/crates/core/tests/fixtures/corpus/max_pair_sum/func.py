def maxPairSum(arr):
    best = -1000000
    for i in range(len(arr)):
        for j in range(i + 1, len(arr)):
            if arr[i] + arr[j] > best:
                best = arr[i] + arr[j]
    return best
