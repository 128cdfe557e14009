int counter = 0;

int helper(int a, int b) {
    return a + b;
}

void drive(int mode) {
    int total = 0;
    total = helper(total, mode);
    if (total > 0) {
        total = total + 1;
    }
    else {
        total = 0;
    }
    switch (mode) {
    case 1:
        total = 10;
    case 2:
        total = 20;
    default:
        total = 30;
    }
    while (total > 0) {
        total = total - 1;
        {
            counter = counter + total;
        }
    }
}
