#include <cstdio>
int main() { std::puts("modchev (work in progress)"); return 0; }
