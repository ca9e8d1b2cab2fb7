#include <cstdio>
int main() { std::puts("demo (work in progress)"); return 0; }
