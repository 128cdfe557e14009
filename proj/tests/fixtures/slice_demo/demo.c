int global_true = 1;
void caller() {
    assign(1);
}
void assign(int i) {
    int x; int z;
    int y = i;
    y = x + 1;

    z = x + 1;
    if (global_true) {
        z = y + 1;
    }
    else {
        z = y + 2;
    }
}
