#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sagecell/cellclient.hpp"
#include "sagecell/errors.hpp"
#include "sagecell/model.hpp"
#include "sagecell/normalizer.hpp"
#include "sagecell/packager.hpp"
#include "sagecell/pipeline.hpp"
#include "sagecell/sanitizer.hpp"
#include "sagecell/scanner.hpp"

namespace {

std::string read_stream(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw sagecell::filter_error("read failure on input stream");
    }
    return buffer.str();
}

// Empty path or "-" selects standard input.
std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return read_stream(std::cin);
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw sagecell::filter_error("cannot read '" + path + "'");
    }
    return read_stream(file);
}

// Empty path or "-" selects standard output.
void write_output(const std::string& path, std::string_view bytes) {
    if (path.empty() || path == "-") {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::cout.flush();
        if (!std::cout) {
            throw sagecell::filter_error("cannot write to standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw sagecell::filter_error("cannot write '" + path + "'");
    }
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    file.flush();
    if (!file) {
        throw sagecell::filter_error("cannot write '" + path + "'");
    }
}

struct FilterOptions {
    std::string tag;
    std::string server;
};

sagecell::FilterConfig build_config(const FilterOptions& options) {
    sagecell::ConfigOverrides overrides;
    if (!options.tag.empty()) {
        overrides.tag_name = options.tag;
    }
    if (!options.server.empty()) {
        overrides.server_url = options.server;
    }
    return sagecell::make_config(overrides);
}

// Loads a plugin from either a directory tree or a zip archive.
sagecell::FileSet load_fileset(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::is_directory(path)) {
        std::vector<fs::path> paths;
        for (const auto& entry : fs::recursive_directory_iterator(path)) {
            if (entry.is_regular_file()) {
                paths.push_back(entry.path());
            }
        }
        std::sort(paths.begin(), paths.end());
        sagecell::FileSet files;
        for (const fs::path& file : paths) {
            const std::string relative =
                file.lexically_relative(path).generic_string();
            files.add(relative, read_input(file.string()));
        }
        return files;
    }
    return sagecell::unpack_archive(read_input(path));
}

int run_filter(const std::string& input, const std::string& output,
               const FilterOptions& options) {
    const sagecell::FilterConfig config = build_config(options);
    const std::string content = read_input(input);
    const sagecell::RenderedOutput result =
        sagecell::filter_document(content, config);
    write_output(output, result.html);
    return 0;
}

int run_scan(const std::string& input, const FilterOptions& options) {
    const sagecell::FilterConfig config = build_config(options);
    const std::string content = read_input(input);
    std::string lines;
    if (sagecell::has_candidate(content, config)) {
        const std::vector<sagecell::CodeBlock> blocks =
            sagecell::extract_blocks(content, config);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            lines += std::to_string(i + 1);
            lines += '\t';
            lines += std::to_string(blocks[i].span_start);
            lines += '\t';
            lines += std::to_string(blocks[i].span_end);
            lines += '\t';
            lines += std::to_string(blocks[i].raw.size());
            lines += '\n';
        }
    }
    write_output("", lines);
    return 0;
}

int run_exec(const std::string& input, const FilterOptions& options,
             int timeout_seconds) {
    const sagecell::FilterConfig config = build_config(options);
    const std::string content = read_input(input);
    // The report is buffered so transport or decode failures leave
    // standard output untouched.
    std::string report;
    bool all_succeeded = true;
    if (sagecell::has_candidate(content, config)) {
        const std::vector<sagecell::CodeBlock> blocks =
            sagecell::extract_blocks(content, config);
        const auto timeout = std::chrono::milliseconds(
            static_cast<std::int64_t>(timeout_seconds) * 1000);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const std::string code =
                sagecell::sanitize(sagecell::normalize(blocks[i].raw));
            const sagecell::ExecutionResult result =
                sagecell::execute_code(code, config.server_url, timeout);
            report += "block " + std::to_string(i + 1) + ": " +
                      (result.success ? "success" : "failure") + "\n";
            if (!result.stdout_text.empty()) {
                report += result.stdout_text;
                if (report.back() != '\n') {
                    report += '\n';
                }
            }
            all_succeeded = all_succeeded && result.success;
        }
    }
    write_output("", report);
    return all_succeeded ? 0 : 1;
}

int run_repack(const std::string& input, const std::string& output,
               const std::string& root) {
    const std::string archive = read_input(input);
    write_output(output, sagecell::repack_archive(archive, root));
    return 0;
}

int run_gen(std::int64_t version, std::int64_t requires_version,
            sagecell::Maturity maturity, const std::string& output) {
    const sagecell::PluginManifest manifest =
        sagecell::make_manifest(version, requires_version, maturity);
    const sagecell::FileSet files = sagecell::gen_manifest(manifest);
    write_output(output, sagecell::pack_fileset(files, "sagecell"));
    return 0;
}

int run_validate(const std::string& path) {
    const sagecell::FileSet files = load_fileset(path);
    const sagecell::ValidationReport report = sagecell::validate_plugin(files);
    std::string lines;
    for (const sagecell::ValidationCheck& check : report.checks) {
        lines += check.passed ? "PASS " : "FAIL ";
        lines += check.name;
        if (!check.passed) {
            lines += ": " + check.detail;
        }
        lines += '\n';
    }
    write_output("", lines);
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rewrites [sage]...[/sage] blocks in documents into embedded "
                 "compute cells and packages the companion plugin"};
    app.require_subcommand(1);

    int exit_code = 0;

    FilterOptions filter_options;
    std::string filter_input;
    std::string filter_output;
    CLI::App* filter_cmd = app.add_subcommand(
        "filter", "Rewrite code blocks in a document into compute cells");
    filter_cmd->add_option("input", filter_input,
                           "Input file (default: standard input)");
    filter_cmd->add_option("-o,--output", filter_output,
                           "Output file (default: standard output)");
    filter_cmd->add_option("--tag", filter_options.tag,
                           "Pseudotag name to scan for (default: sage)");
    filter_cmd
        ->add_option("--server", filter_options.server,
                     "Compute service base URL")
        ->envname("SAGECELL_SERVER");
    filter_cmd->callback(
        [&] { exit_code = run_filter(filter_input, filter_output, filter_options); });

    FilterOptions scan_options;
    std::string scan_input;
    CLI::App* scan_cmd = app.add_subcommand(
        "scan", "List code blocks as tab-separated index, span and length");
    scan_cmd->add_option("input", scan_input,
                         "Input file (default: standard input)");
    scan_cmd->add_option("--tag", scan_options.tag,
                         "Pseudotag name to scan for (default: sage)");
    scan_cmd->callback([&] { exit_code = run_scan(scan_input, scan_options); });

    FilterOptions exec_options;
    std::string exec_input;
    int exec_timeout = 30;
    CLI::App* exec_cmd = app.add_subcommand(
        "exec", "Run each code block against the compute service");
    exec_cmd->add_option("input", exec_input,
                         "Input file (default: standard input)");
    exec_cmd->add_option("--tag", exec_options.tag,
                         "Pseudotag name to scan for (default: sage)");
    exec_cmd
        ->add_option("--server", exec_options.server,
                     "Compute service base URL")
        ->envname("SAGECELL_SERVER");
    exec_cmd
        ->add_option("--timeout", exec_timeout,
                     "Request timeout in seconds (default: 30)")
        ->check(CLI::PositiveNumber);
    exec_cmd->callback(
        [&] { exit_code = run_exec(exec_input, exec_options, exec_timeout); });

    CLI::App* package_cmd =
        app.add_subcommand("package", "Plugin packaging helpers");
    package_cmd->require_subcommand(1);

    std::string repack_input;
    std::string repack_output;
    std::string repack_root = "sagecell";
    CLI::App* repack_cmd = package_cmd->add_subcommand(
        "repack", "Rename the top-level directory of a plugin zip");
    repack_cmd->add_option("archive", repack_input, "Plugin zip to repack")
        ->required();
    repack_cmd->add_option("-o,--output", repack_output,
                           "Output file (default: standard output)");
    repack_cmd->add_option("--root", repack_root,
                           "Directory name to install (default: sagecell)");
    repack_cmd->callback(
        [&] { exit_code = run_repack(repack_input, repack_output, repack_root); });

    std::int64_t gen_version = 0;
    std::int64_t gen_requires = 0;
    sagecell::Maturity gen_maturity = sagecell::Maturity::stable;
    std::string gen_output;
    const std::map<std::string, sagecell::Maturity> maturity_names{
        {"alpha", sagecell::Maturity::alpha},
        {"beta", sagecell::Maturity::beta},
        {"rc", sagecell::Maturity::rc},
        {"stable", sagecell::Maturity::stable},
    };
    CLI::App* gen_cmd = package_cmd->add_subcommand(
        "gen", "Generate the plugin manifest files as a zip rooted at sagecell/");
    gen_cmd
        ->add_option("--version", gen_version,
                     "Plugin version as a 10-digit YYYYMMDDSS number")
        ->required();
    gen_cmd
        ->add_option("--requires", gen_requires,
                     "Minimum host platform version")
        ->required();
    gen_cmd
        ->add_option("--maturity", gen_maturity,
                     "Release maturity: alpha, beta, rc or stable")
        ->transform(CLI::CheckedTransformer(maturity_names, CLI::ignore_case));
    gen_cmd->add_option("-o,--output", gen_output,
                        "Output file (default: standard output)");
    gen_cmd->callback([&] {
        exit_code = run_gen(gen_version, gen_requires, gen_maturity, gen_output);
    });

    std::string validate_path;
    CLI::App* validate_cmd = package_cmd->add_subcommand(
        "validate", "Check a plugin zip or directory for the expected layout");
    validate_cmd->add_option("path", validate_path, "Plugin zip or directory")
        ->required();
    validate_cmd->callback([&] { exit_code = run_validate(validate_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sagecell::filter_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
