#include "cyclemld/cli.hpp"

int main(int argc, char** argv) {
    return cyclemld::run(argc, argv);
}
