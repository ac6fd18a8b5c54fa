int sumArray(int[] arr) {
    int s = 0;
    for (int x : arr) {
        s += x;
    }
    return s;
}
