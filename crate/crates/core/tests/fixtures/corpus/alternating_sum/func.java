int alternatingSum(int[] arr) {
    int s = 0;
    for (int i = 0; i < arr.length; i++) {
        if (i % 2 == 0) {
            s += arr[i];
        } else {
            s -= arr[i];
        }
    }
    return s;
}
