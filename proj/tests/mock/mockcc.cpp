// mockcc: a stand-in compiler driven by directives in the test source.
//
//   mockcc --version                 prints "mockcc $MOCKCC_VERSION" (default 9.3.0)
//   mockcc [flags] <src> -o <bin>    compiles <src> into a /bin/sh script <bin>
//
// Directives, one per line, anywhere in the source (`//!` or `!!` prefix):
//   //! MOCK: compile_exit=1
//   //! MOCK: compile_output=error: bad pragma
//   //! MOCK: compile_sleep=5
//   //! MOCK: run_exit=7
//   //! MOCK: run_output=some text
//   //! MOCK: run_sleep=30
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>

namespace fs = std::filesystem;

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_directives(const fs::path& source) {
    std::map<std::string, std::string> out;
    std::ifstream in(source);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        for (const std::string marker : {"//! MOCK:", "!! MOCK:"}) {
            if (line.rfind(marker, 0) != 0) continue;
            auto body = trim(line.substr(marker.size()));
            auto eq = body.find('=');
            if (eq != std::string::npos) out[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
        }
    }
    return out;
}

std::string shell_quote(const std::string& text) {
    std::string out = "'";
    for (char c : text) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

std::string get(const std::map<std::string, std::string>& d, const std::string& key, const std::string& fallback) {
    auto it = d.find(key);
    return it == d.end() ? fallback : it->second;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc == 2 && std::string(argv[1]) == "--version") {
        const char* version = std::getenv("MOCKCC_VERSION");
        std::cout << "mockcc " << (version ? version : "9.3.0") << "\n";
        std::cout << "Mock compiler for harness tests\n";
        return 0;
    }

    fs::path source;
    fs::path binary;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "-o" && i + 1 < argc) {
            binary = argv[++i];
        } else if (!arg.empty() && arg[0] != '-') {
            source = arg;
        }
    }
    if (source.empty() || binary.empty()) {
        std::cerr << "mockcc: usage: mockcc [flags] <source> -o <binary>\n";
        return 2;
    }
    std::ifstream probe(source);
    if (!probe) {
        std::cerr << "mockcc: cannot open " << source << "\n";
        return 1;
    }

    const auto d = read_directives(source);
    if (auto sleep = get(d, "compile_sleep", ""); !sleep.empty()) {
        std::this_thread::sleep_for(std::chrono::duration<double>(std::stod(sleep)));
    }
    const auto compile_output = get(d, "compile_output", "");
    if (!compile_output.empty()) std::cerr << compile_output << "\n";
    const int compile_exit = std::stoi(get(d, "compile_exit", "0"));
    if (compile_exit != 0) return compile_exit;

    const auto name = source.filename().string();
    std::ofstream out(binary, std::ios::trunc);
    out << "#!/bin/sh\n";
    out << "printf '%s\\n' "
        << shell_quote(get(d, "run_output", "[OMPVV_RESULT: " + name + "] Test passed.")) << "\n";
    if (auto sleep = get(d, "run_sleep", ""); !sleep.empty()) out << "sleep " << sleep << "\n";
    out << "exit " << std::stoi(get(d, "run_exit", "0")) << "\n";
    out.close();
    fs::permissions(binary, fs::perms::owner_all | fs::perms::group_read | fs::perms::group_exec |
                                fs::perms::others_read | fs::perms::others_exec);
    return 0;
}
