#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstring>
#include <vector>

#include "test_support.hpp"

int main(int argc, char** argv) {
    std::vector<char*> passthrough;
    for (int i = 0; i < argc; ++i) {
        if (std::strncmp(argv[i], "--fixtures=", 11) == 0) {
            testsupport::fixtures_dir() = argv[i] + 11;
        } else if (std::strncmp(argv[i], "--cli=", 6) == 0) {
            testsupport::cli_path() = argv[i] + 6;
        } else {
            passthrough.push_back(argv[i]);
        }
    }
    doctest::Context context(static_cast<int>(passthrough.size()), passthrough.data());
    return context.run();
}
