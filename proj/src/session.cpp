#include "specfem_mcp/session.hpp"

#include "specfem_mcp/client.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace smcp {

SessionScript SessionScript::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open session script: " + path.string());
    }
    Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw std::runtime_error("session script is not valid JSON: " + std::string(e.what()));
    }

    SessionScript script;
    const std::string profile_text = doc.value("server_profile", "");
    const auto profile = parse_profile(profile_text);
    if (!profile) {
        throw std::runtime_error("unknown server_profile: '" + profile_text + "'");
    }
    script.profile = *profile;
    script.workspace = doc.value("workspace", "");
    if (!doc.contains("steps") || !doc["steps"].is_array() || doc["steps"].empty()) {
        throw std::runtime_error("session script needs a non-empty steps array");
    }
    for (const auto& s : doc["steps"]) {
        SessionStep step;
        step.tool = s.value("tool", "");
        if (step.tool.empty()) {
            throw std::runtime_error("session step without a tool name");
        }
        step.args = s.value("args", Json::object());
        const std::string expect = s.value("expect", "ok");
        if (expect != "ok" && expect != "error") {
            throw std::runtime_error("step expect must be ok or error, got '" + expect + "'");
        }
        step.expect_ok = expect == "ok";
        script.steps.push_back(std::move(step));
    }
    return script;
}

int replay_session(const SessionScript& script, const ReplayOptions& options) {
    std::ostream& log = options.log != nullptr ? *options.log : std::cout;
    const fs::path workspace =
        options.workspace.value_or(script.workspace.empty() ? fs::path(".")
                                                            : script.workspace);

    std::vector<std::string> argv = {options.server_exe, "serve", "--profile",
                                     profile_id(script.profile), "--workspace",
                                     workspace.string()};
    if (options.mode) {
        argv.push_back(*options.mode == RunMode::mock ? "--mock" : "--real");
    }

    try {
        McpClient client(argv);
        try {
            const Json init = client.initialize();
            const std::string name = init["serverInfo"].value("name", "");
            if (name != server_name(script.profile)) {
                log << "handshake: unexpected server name '" << name << "'\n";
                return kReplayHandshakeFailure;
            }
        } catch (const std::exception& e) {
            log << "handshake failed: " << e.what() << "\n";
            return kReplayHandshakeFailure;
        }

        bool all_matched = true;
        int index = 0;
        for (const auto& step : script.steps) {
            ++index;
            bool got_ok = false;
            std::string detail;
            try {
                const ToolCallOutcome outcome = client.call_tool(step.tool, step.args);
                got_ok = outcome.ok();
                if (outcome.protocol_error) {
                    detail = "protocol error " + std::to_string(outcome.error_code) + ": " +
                             outcome.error_message;
                } else if (outcome.result.is_error) {
                    detail = outcome.result.text();
                }
            } catch (const ServerCrashed& e) {
                log << "FAIL step " << index << " " << step.tool
                    << " (server crashed: " << e.what() << ")\n";
                return kReplayServerCrash;
            }
            const bool matched = got_ok == step.expect_ok;
            all_matched = all_matched && matched;
            log << (matched ? "PASS" : "FAIL") << " step " << index << " " << step.tool
                << " (expected " << (step.expect_ok ? "ok" : "error") << ", got "
                << (got_ok ? "ok" : "error") << ")\n";
            if (!matched && !detail.empty()) {
                std::istringstream lines(detail);
                std::string line;
                while (std::getline(lines, line)) {
                    log << "     | " << line << "\n";
                }
            }
        }
        client.shutdown();
        return all_matched ? kReplayOk : kReplayMismatch;
    } catch (const std::exception& e) {
        log << "replay aborted: " << e.what() << "\n";
        return kReplayServerCrash;
    }
}

} // namespace smcp
