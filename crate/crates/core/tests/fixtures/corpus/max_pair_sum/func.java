int maxPairSum(int[] arr) {
    int best = -1000000;
    for (int i = 0; i < arr.length; i++) {
        for (int j = i + 1; j < arr.length; j++) {
            if (arr[i] + arr[j] > best) {
                best = arr[i] + arr[j];
            }
        }
    }
    return best;
}
