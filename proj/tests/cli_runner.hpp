// Runs the command-line binary and captures stdout, stderr and the exit status.
#ifndef CHAINLIFT_TEST_CLI_RUNNER_HPP
#define CHAINLIFT_TEST_CLI_RUNNER_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace cli {

struct Run
{
    int status;
    std::string out;
    std::string err;
};

inline Run run(const std::string& args)
{
    const auto err_path =
        std::filesystem::temp_directory_path() / ("chainlift_stderr_" + std::to_string(::getpid()) + ".txt");
    const std::string command = std::string(CHAINLIFT_CLI) + " " + args + " 2>" + err_path.string();
    Run r{-1, {}, {}};
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream err(err_path);
    std::ostringstream text;
    text << err.rdbuf();
    r.err = text.str();
    std::filesystem::remove(err_path);
    return r;
}

}   // namespace cli

#endif
