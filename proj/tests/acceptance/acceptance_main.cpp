int main() { return 1; }  // placeholder until the suite is written
