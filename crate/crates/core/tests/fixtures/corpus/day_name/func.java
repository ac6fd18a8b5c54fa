String dayName(int d) {
    switch (d) {
        case 1:
            return "Mon";
        case 2:
            return "Tue";
        case 3:
            return "Wed";
        default:
            return "?";
    }
}
