#include "luxforge/cli.hpp"

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "luxforge/design.hpp"
#include "luxforge/errors.hpp"
#include "luxforge/numeric_text.hpp"
#include "luxforge/report.hpp"
#include "luxforge/service.hpp"

namespace luxforge::cli {

namespace {

namespace fs = std::filesystem;

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    write_text_file_atomic(out_path, text);
  }
}

int cmd_new(const std::string& path, const std::string& name, bool force, std::ostream& out, std::ostream& err) {
  if (fs::exists(path) && !force) {
    err << "error: " << path << " already exists (use --force to overwrite)\n";
    return kExitFailure;
  }
  project::Project p;
  p.name = name.empty() ? fs::path(path).stem().stem().string() : name;
  write_text_file_atomic(path, project::save_project(p));
  out << "created " << path << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const auto ctx = design::load_context(path);
  const auto issues = project::validate_project(ctx.project, &ctx.library);
  for (const auto& i : issues) {
    out << (i.severity == project::Severity::Error ? "error" : "warning") << ": ";
    if (!i.subject.empty()) out << '[' << i.subject << "] ";
    out << i.code << ": " << i.message << '\n';
  }
  if (project::has_errors(issues)) return kExitFailure;
  out << "ok: " << ctx.project.rooms.size() << " rooms, " << ctx.project.circuits.size() << " circuits\n";
  return kExitOk;
}

int cmd_dimension(const std::string& path, const std::string& room, std::ostream& out) {
  const auto ctx = design::load_context(path);
  std::vector<report::ReportRow> rows;
  if (!room.empty()) {
    const auto& spec = design::room_or_throw(ctx.project, room);
    design::dimension_room(ctx, room);
    rows.push_back(report::report_row(ctx, spec));
  } else {
    for (const auto& spec : ctx.project.rooms) {
      if (spec.dimension || spec.geometry) rows.push_back(report::report_row(ctx, spec));
    }
  }
  out << report::rooms_csv(rows);
  return kExitOk;
}

int cmd_grid(const std::string& path, const std::string& room, double spacing, const std::string& out_path,
             std::ostream& out) {
  const auto ctx = design::load_context(path);
  emit(grid::grid_csv(design::room_grid(ctx, room, spacing)), out_path, out);
  return kExitOk;
}

int cmd_serve(const std::string& path, const std::string& host, int port, std::ostream& out) {
  auto ctx = design::load_context(path);
  service::DesignService svc(std::move(ctx), fs::path(path).parent_path());
  out << "serving " << path << " on http://" << host << ':' << port << '\n' << std::flush;
  return svc.listen(host, port) ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"luxforge: lumen-method lighting and circuit design engine", "luxforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LUXFORGE_VERSION);

  std::string project_path;
  std::string room;
  std::string out_path;
  std::string name;
  std::string host = "127.0.0.1";
  bool force = false;
  double spacing = grid::kDefaultSpacing;
  int port = 8080;

  auto* cmd_new_app = app.add_subcommand("new", "Scaffold an empty project file");
  cmd_new_app->add_option("path", project_path, "Project file to create")->required();
  cmd_new_app->add_option("--name", name, "Project name (defaults to the file stem)");
  cmd_new_app->add_flag("--force", force, "Overwrite an existing file");

  auto* validate = app.add_subcommand("validate", "Check a project and print its issues");
  validate->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);

  auto* dimension = app.add_subcommand("dimension", "Lumen-method dimensioning per room");
  dimension->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);
  dimension->add_option("--room", room, "Only this room");

  auto* grid_cmd = app.add_subcommand("grid", "Point-by-point illuminance grid as CSV");
  grid_cmd->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);
  grid_cmd->add_option("--room", room, "Room name")->required();
  grid_cmd->add_option("--spacing", spacing, "Grid spacing in metres")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* circuits = app.add_subcommand("circuits", "Circuit sizing table as CSV");
  circuits->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);

  auto* report_cmd = app.add_subcommand("report", "Full CSV report");
  report_cmd->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* serve = app.add_subcommand("serve", "Start the HTTP design service");
  serve->add_option("project", project_path, "Project file")->required()->check(CLI::ExistingFile);
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*cmd_new_app) return cmd_new(project_path, name, force, out, err);
    if (*validate) return cmd_validate(project_path, out);
    if (*dimension) return cmd_dimension(project_path, room, out);
    if (*grid_cmd) return cmd_grid(project_path, room, spacing, out_path, out);
    if (*circuits) {
      out << report::circuits_csv(design::load_context(project_path));
      return kExitOk;
    }
    if (*report_cmd) {
      emit(report::project_report(design::load_context(project_path)), out_path, out);
      return kExitOk;
    }
    if (*serve) return cmd_serve(project_path, host, port, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace luxforge::cli
