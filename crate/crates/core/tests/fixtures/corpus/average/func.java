double average(int[] arr) {
    double s = 0;
    for (int x : arr) {
        s += x;
    }
    return s / arr.length;
}
