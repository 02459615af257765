#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "arithdyn/app/commands.hpp"

namespace {

using namespace arithdyn;
using namespace arithdyn::app;

constexpr const char* kFooter =
    "All logarithms are natural; all tolerances are absolute.\n"
    "Values: complex numbers as re,im; rationals as a/b or decimals; lists separated by ';'.\n"
    "Options override values from --config FILE, which override defaults.\n"
    "Exit status: 0 ok, 1 failed selftest, 2 invalid config or domain error, 3 numeric\n"
    "non-convergence (summary flagged partial), 4 resource budget exceeded.";

struct SubcommandState {
  const CommandSpec* spec = nullptr;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::string config;
  bool dry_run = false;
};

int emit(const Json& summary, int status) {
  std::cout << summary.dump() << std::endl;
  return status;
}

Json failure(const std::string& command, const char* status, const std::string& message) {
  return Json{{"command", command}, {"status", status}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic dynamics on P^1: Green functions, canonical heights, equilibrium measures and\n"
               "parameter-space heights.",
               "arithdyn"};
  app.footer(kFooter);
  app.require_subcommand(0, 1);
  bool print_schema = false;
  app.add_flag("--schema", print_schema, "print the JSON schema of config files and exit");

  std::vector<std::unique_ptr<SubcommandState>> states;
  for (const auto& spec : command_table()) {
    auto st = std::make_unique<SubcommandState>();
    st->spec = &spec;
    st->app = app.add_subcommand(spec.name, spec.help);
    st->app->footer(kFooter);
    for (const auto& p : spec.params) {
      const std::string flag = "--" + p.name;
      if (p.type == ParamType::flag) {
        st->app->add_flag(flag, st->flags[p.name], p.help);
        continue;
      }
      std::string help = p.help;
      if (!p.choices.empty()) help += " {" + CLI::detail::join(p.choices, ",") + "}";
      st->app->add_option(flag, st->values[p.name], help + " [default: " + (p.fallback.empty() ? "none" : p.fallback) + "]");
    }
    st->app->add_option("--config", st->config, "JSON config file");
    st->app->add_flag("--dry-run", st->dry_run, "print the resolved config and exit");
    states.push_back(std::move(st));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return emit(failure("", "config-error", e.what()), kExitConfig);
  }

  if (print_schema) {
    std::cout << config_schema().dump(2) << std::endl;
    return kExitOk;
  }
  SubcommandState* chosen = nullptr;
  for (auto& st : states)
    if (st->app->parsed()) chosen = st.get();
  if (!chosen) {
    std::cout << app.help();
    return kExitConfig;
  }

  const std::string& name = chosen->spec->name;
  try {
    std::map<std::string, std::string> given;
    for (const auto& p : chosen->spec->params) {
      if (chosen->app->get_option("--" + p.name)->count() == 0) continue;
      given[p.name] = p.type == ParamType::flag ? (chosen->flags[p.name] ? "true" : "false") : chosen->values[p.name];
    }
    const Json file = chosen->config.empty() ? Json::object() : read_json_file(chosen->config);
    const ResolvedConfig cfg = resolve_config(*chosen->spec, given, file);
    if (chosen->dry_run) return emit(Json{{"command", name}, {"status", "dry-run"}, {"config", cfg.to_json()}}, kExitOk);
    const CommandResult r = run_command(cfg);
    return emit(r.summary, r.status);
  } catch (const DomainError& e) {
    return emit(failure(name, "domain-error", e.what()), kExitConfig);
  } catch (const NumericError& e) {
    Json s = failure(name, "numeric-error", e.what());
    s["partial"] = true;
    s["best_value"] = e.best_value();
    s["best_error"] = e.best_error();
    return emit(s, kExitNumeric);
  } catch (const ResourceError& e) {
    Json s = failure(name, "resource-error", e.what());
    if (e.largest_height() > 0) s["largest_height"] = e.largest_height();
    return emit(s, kExitResource);
  } catch (const std::exception& e) {
    return emit(failure(name, "error", e.what()), kExitFailedCheck);
  }
}
