#include <CLI11.hpp>

#include "specfem_mcp/client.hpp"
#include "specfem_mcp/server.hpp"
#include "specfem_mcp/session.hpp"
#include "specfem_mcp/suites.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using namespace smcp;

namespace {

std::string self_executable() {
    std::error_code ec;
    const fs::path p = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        return p.string();
    }
    return "specfem-mcp";
}

RunnerConfig resolve_runner(Profile profile, bool force_mock, bool force_real,
                            const std::string& bin_override) {
    RunnerConfig config = RunnerConfig::from_env(profile);
    if (!bin_override.empty()) {
        config.bin_dir = bin_override;
        config.mode = RunMode::real_binaries;
    }
    if (force_mock) {
        config.mode = RunMode::mock;
    }
    if (force_real) {
        config.mode = RunMode::real_binaries;
    }
    return config;
}

std::vector<std::string> server_argv(const std::string& exe, Profile profile,
                                     const fs::path& workspace, bool mock, bool real) {
    std::vector<std::string> argv = {exe, "serve", "--profile", profile_id(profile),
                                     "--workspace", workspace.string()};
    if (mock) {
        argv.push_back("--mock");
    }
    if (real) {
        argv.push_back("--real");
    }
    return argv;
}

fs::path scratch_workspace() {
    std::mt19937_64 rng(static_cast<unsigned long long>(::getpid()) * 2654435761ull +
                        std::random_device{}());
    return fs::temp_directory_path() /
           ("specfem-mcp-" + std::to_string(rng() % 100000000));
}

int cmd_serve(Profile profile, const fs::path& workspace_path, const RunnerConfig& runner) {
    try {
        auto workspace = std::make_shared<Workspace>(Workspace::init(workspace_path));
        workspace->set_bin_dir(runner.bin_dir);
        const ToolRegistry registry = make_registry(profile, SuiteContext{workspace, runner});
        return serve(StreamTransport{std::cin, std::cout}, registry, *workspace);
    } catch (const std::exception& e) {
        std::cerr << "serve: " << e.what() << "\n";
        return 1;
    }
}

int cmd_tools(Profile profile) {
    const fs::path workspace = scratch_workspace();
    try {
        McpClient client(server_argv(self_executable(), profile, workspace, true, false));
        client.initialize();
        const auto tools = client.list_tools();
        std::size_t width = 0;
        for (const auto& t : tools) {
            width = std::max(width, t.name.size());
        }
        for (const auto& t : tools) {
            std::cout << t.name << std::string(width - t.name.size() + 2, ' ')
                      << t.description << "\n";
        }
        client.shutdown();
        fs::remove_all(workspace);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "tools: " << e.what() << "\n";
        fs::remove_all(workspace);
        return 2;
    }
}

int cmd_call(Profile profile, const std::string& tool, const std::string& args_file,
             const fs::path& workspace, bool mock, bool real) {
    Json args = Json::object();
    if (!args_file.empty()) {
        std::ifstream in(args_file);
        if (!in) {
            std::cerr << "call: cannot open args file " << args_file << "\n";
            return 1;
        }
        try {
            in >> args;
        } catch (const std::exception& e) {
            std::cerr << "call: args file is not valid JSON: " << e.what() << "\n";
            return 1;
        }
    }
    try {
        McpClient client(server_argv(self_executable(), profile, workspace, mock, real));
        client.initialize();
        const ToolCallOutcome outcome = client.call_tool(tool, args);
        if (outcome.protocol_error) {
            std::cout << "protocol error " << outcome.error_code << ": "
                      << outcome.error_message << "\n";
            client.shutdown();
            return 1;
        }
        for (const auto& block : outcome.result.content) {
            if (block.type == ContentBlock::Type::text) {
                std::cout << block.value << "\n";
            } else {
                std::cout << "artifact: " << block.value << "\n";
            }
        }
        client.shutdown();
        return outcome.result.is_error ? 1 : 0;
    } catch (const HandshakeError& e) {
        std::cerr << "call: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "call: " << e.what() << "\n";
        return 3;
    }
}

int cmd_replay(const std::string& file, const std::string& workspace, bool mock, bool real) {
    SessionScript script;
    try {
        script = SessionScript::load(file);
    } catch (const std::exception& e) {
        std::cerr << "replay: " << e.what() << "\n";
        return 2;
    }
    ReplayOptions options;
    options.server_exe = self_executable();
    if (!workspace.empty()) {
        options.workspace = fs::path(workspace);
    }
    if (mock) {
        options.mode = RunMode::mock;
    } else if (real) {
        options.mode = RunMode::real_binaries;
    }
    options.log = &std::cout;
    const int rc = replay_session(script, options);
    std::cout << (rc == kReplayOk ? "replay: all steps matched"
                                  : "replay: finished with failures")
              << " (exit " << rc << ")\n";
    return rc;
}

int cmd_schemas(const fs::path& out_dir) {
    try {
        for (const Profile profile :
             {Profile::specfem2d, Profile::specfem3d, Profile::specfem3d_globe}) {
            const fs::path dir = out_dir / profile_id(profile);
            fs::create_directories(dir);
            for (const auto& descriptor : descriptors_for(profile)) {
                std::ofstream out(dir / (descriptor.name + ".json"));
                out << descriptor.to_json().dump(2) << "\n";
            }
        }
        std::cout << "wrote tool schemas under " << out_dir.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "schemas: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SPECFEM MCP server suite: three stdio JSON-RPC tool servers plus a "
                 "reference client"};
    app.require_subcommand(1);

    std::string profile_text = "2d";
    std::string workspace = ".";
    std::string tool;
    std::string args_file;
    std::string session_file;
    std::string out_dir = "schemas";
    std::string bin_dir;
    bool mock = false;
    bool real = false;

    auto add_mode_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--mock", mock, "force the built-in mock solver");
        cmd->add_flag("--real", real, "force external SPECFEM binaries");
    };

    CLI::App* serve_cmd =
        app.add_subcommand("serve", "run one MCP server profile on stdio");
    serve_cmd->add_option("--profile", profile_text, "2d, 3d or globe")->required();
    serve_cmd->add_option("--workspace", workspace, "working directory root")->required();
    serve_cmd->add_option("--bin", bin_dir, "directory holding the SPECFEM executables");
    add_mode_flags(serve_cmd);

    CLI::App* tools_cmd = app.add_subcommand("tools", "list a profile's tool catalog");
    tools_cmd->add_option("--profile", profile_text, "2d, 3d or globe")->required();

    CLI::App* call_cmd = app.add_subcommand("call", "invoke one tool and print the result");
    call_cmd->add_option("--profile", profile_text, "2d, 3d or globe")->required();
    call_cmd->add_option("--tool", tool, "full tool name")->required();
    call_cmd->add_option("--args", args_file, "JSON file with the tool arguments");
    call_cmd->add_option("--workspace", workspace, "working directory root");
    add_mode_flags(call_cmd);

    std::string replay_workspace; // empty = use the script's workspace
    CLI::App* replay_cmd =
        app.add_subcommand("replay", "replay a scripted session against a fresh server");
    replay_cmd->add_option("file", session_file, "session script (.session JSON)")->required();
    replay_cmd->add_option("--workspace", replay_workspace,
                           "override the script's workspace path");
    add_mode_flags(replay_cmd);

    CLI::App* schemas_cmd =
        app.add_subcommand("schemas", "write the per-tool argument schemas as JSON files");
    schemas_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (mock && real) {
        std::cerr << "--mock and --real are mutually exclusive\n";
        return 1;
    }

    const auto profile = parse_profile(profile_text);
    if ((serve_cmd->parsed() || tools_cmd->parsed() || call_cmd->parsed()) && !profile) {
        std::cerr << "unknown profile '" << profile_text
                  << "' (expected 2d, 3d or globe)\n";
        return 1;
    }

    if (serve_cmd->parsed()) {
        return cmd_serve(*profile, workspace, resolve_runner(*profile, mock, real, bin_dir));
    }
    if (tools_cmd->parsed()) {
        return cmd_tools(*profile);
    }
    if (call_cmd->parsed()) {
        return cmd_call(*profile, tool, args_file, workspace, mock, real);
    }
    if (replay_cmd->parsed()) {
        return cmd_replay(session_file, replay_workspace, mock, real);
    }
    if (schemas_cmd->parsed()) {
        return cmd_schemas(out_dir);
    }
    return 1;
}
