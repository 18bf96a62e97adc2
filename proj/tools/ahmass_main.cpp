#include <cstdio>

int main() {
  std::puts("ahmass: CLI not wired yet");
  return 1;
}
