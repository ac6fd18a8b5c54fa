int maxArray(int[] arr) {
    int m = arr[0];
    for (int i = 1; i < arr.length; i++) {
        if (arr[i] > m) {
            m = arr[i];
        }
    }
    return m;
}
