#pragma once

#include "specfem_mcp/runner_config.hpp"
#include "specfem_mcp/tool.hpp"
#include "specfem_mcp/workspace.hpp"

#include <memory>
#include <vector>

namespace smcp {

/// Everything a suite handler needs: the workspace it writes into and
/// how to run executables. Copyable; handlers keep the workspace alive.
struct SuiteContext {
    std::shared_ptr<Workspace> workspace;
    RunnerConfig runner;
};

/// Catalog order matches the published tool tables for each profile.
std::vector<ToolDescriptor> descriptors_2d();
std::vector<ToolDescriptor> descriptors_3d();
std::vector<ToolDescriptor> descriptors_globe();
std::vector<ToolDescriptor> descriptors_for(Profile profile);

ToolRegistry make_registry_2d(SuiteContext ctx);
ToolRegistry make_registry_3d(SuiteContext ctx);
ToolRegistry make_registry_globe(SuiteContext ctx);
ToolRegistry make_registry(Profile profile, SuiteContext ctx);

} // namespace smcp
