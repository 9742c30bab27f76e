// Command-line front end. Subcommands are wired up in cli_dispatch below.
#include <cstdio>

int main() {
    std::puts("pmns-lab: not wired up yet");
    return 64;
}
