#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

// Runs the built CLI binary (path injected by CMake) and captures exit
// code and stdout. Stderr goes to a scratch file per call.
namespace cli_test {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const std::string out_path = "/tmp/dfi_cli_out_" + std::to_string(getpid()) + "_" +
                                 std::to_string(counter++);
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                            std::string(DFI_CLI_PATH) + " " + args + " > " + out_path + " 2> " +
                            out_path + ".err";
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    std::remove(out_path.c_str());
    std::remove((out_path + ".err").c_str());
    return result;
}

}  // namespace cli_test
