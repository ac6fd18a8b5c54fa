int minIndex(int[] arr) {
    int best = 0;
    for (int i = 1; i < arr.length; i++) {
        if (arr[i] < arr[best]) {
            best = i;
        }
    }
    return best;
}
