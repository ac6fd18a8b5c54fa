int evenOddBalance(int[] arr) {
    int d = 0;
    for (int x : arr) {
        if (x % 2 == 0) {
            d++;
        } else {
            d--;
        }
    }
    return d;
}
