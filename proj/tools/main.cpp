#include <cstdio>

int main() {
  std::puts("kcalc: command-line interface under construction");
  return 1;
}
