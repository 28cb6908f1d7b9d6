#include "eigedge/cli.hpp"

int main(int argc, char** argv) {
    return eigedge::run_cli(argc, argv);
}
