#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "dropshape/cli.hpp"

namespace dropshape {

std::string resolve_output_path(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("DROPSHAPE_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

CommandResult run(const RunConfig& config) {
  switch (config.command) {
    case Command::profile: return run_profile(config);
    case Command::validate: return run_validate(config);
    case Command::sweep: return run_sweep(config);
    case Command::fit: return run_fit(config);
  }
  throw invalid_parameter("run: unknown command");
}

void write_document_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  // the temp file must live on the same filesystem as the target for the
  // rename to stay atomic, so it goes next to it
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ill_posed("write_document_atomic: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ill_posed("write_document_atomic: short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ill_posed("write_document_atomic: cannot move into place: " + path);
  }
}

}  // namespace dropshape
