// qdamp — command-line front end of the quantum dissipation toolkit
#include <iostream>
#include <string>
#include <vector>

#include "qdamp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const qdamp::cli::RunConfig cfg = qdamp::cli::parse_args(args);
        if (cfg.command == qdamp::cli::Command::Help) {
            std::cout << cfg.help_text;
            return 0;
        }
        return qdamp::cli::run(cfg);
    } catch (const qdamp::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n' << e.remedy << '\n';
        return 2;
    }
}
