int countPositive(int[] arr) {
    int c = 0;
    for (int x : arr) {
        if (x > 0) {
            c++;
        }
    }
    return c;
}
