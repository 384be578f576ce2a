#include "dmtopo/cli.hpp"

int main(int argc, char** argv) {
    return dmtopo::cli::run(argc, argv);
}
