//! FEATURE: parallel_for
int main(void) { return 0; }
