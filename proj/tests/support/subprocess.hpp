#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace testsupport {

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline void write_file_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

// Self-deleting scratch directory for one test.
class TempDir {
public:
    TempDir() {
        std::string pattern =
            (std::filesystem::temp_directory_path() / "sagecell-test-XXXXXX")
                .string();
        std::vector<char> buffer(pattern.begin(), pattern.end());
        buffer.push_back('\0');
        if (mkdtemp(buffer.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_.assign(buffer.data());
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

struct CliResult {
    int exit_code = -1;
    std::string output;
    std::string error;
};

inline std::string cli_path() {
    if (const char* env = std::getenv("SAGECELL_CLI")) {
        return env;
    }
#ifdef SAGECELL_CLI_PATH
    return SAGECELL_CLI_PATH;
#else
    throw std::runtime_error("SAGECELL_CLI is not set");
#endif
}

inline std::string shell_quote(const std::string& arg) {
    std::string out = "'";
    for (char c : arg) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('\'');
    return out;
}

// Runs the command line tool with the given arguments, feeding it
// stdin_bytes and capturing stdout and stderr separately.
inline CliResult run_cli(
    const std::vector<std::string>& args, std::string_view stdin_bytes = {},
    const std::vector<std::pair<std::string, std::string>>& env = {}) {
    TempDir dir;
    const std::string in_path = dir.file("stdin");
    const std::string out_path = dir.file("stdout");
    const std::string err_path = dir.file("stderr");
    write_file_bytes(in_path, stdin_bytes);

    std::string command;
    for (const auto& [key, value] : env) {
        command += key + "=" + shell_quote(value) + " ";
    }
    command += shell_quote(cli_path());
    for (const std::string& arg : args) {
        command += " " + shell_quote(arg);
    }
    command += " < " + shell_quote(in_path);
    command += " > " + shell_quote(out_path);
    command += " 2> " + shell_quote(err_path);

    const int rc = std::system(command.c_str());
    CliResult result;
    if (rc != -1 && WIFEXITED(rc)) {
        result.exit_code = WEXITSTATUS(rc);
    }
    result.output = read_file_bytes(out_path);
    result.error = read_file_bytes(err_path);
    return result;
}

} // namespace testsupport
