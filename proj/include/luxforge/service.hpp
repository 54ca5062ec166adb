#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "luxforge/design.hpp"

namespace httplib {
class Server;
}

namespace luxforge::service {

struct Snapshot {
  std::uint64_t revision = 0;
  std::shared_ptr<const design::DesignContext> context;
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  std::string cors_origin = "*";
};

/// Single-writer, many-reader facade. Readers take the current snapshot
/// pointer and compute without holding the lock; an accepted PUT swaps in a
/// fully built snapshot, so a reader sees either the old or the new project.
class DesignService {
 public:
  DesignService(design::DesignContext initial, std::filesystem::path base_dir, ServiceOptions options = {});
  ~DesignService();

  DesignService(const DesignService&) = delete;
  DesignService& operator=(const DesignService&) = delete;

  std::shared_ptr<const Snapshot> snapshot() const;

  // Transport-independent handlers; the HTTP routes forward to these.
  Response get_project() const;
  Response put_project(const std::string& body, const std::string& if_revision);
  Response calc_lumen(const std::string& body) const;
  Response calc_grid(const std::string& body) const;

  /// Blocks serving on host:port until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and serves on a background thread; returns the port.
  int start_background(const std::string& host = "127.0.0.1");
  void stop();

 private:
  void install_routes();
  void stamp(Response& r) const;

  std::filesystem::path base_dir_;
  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> current_;
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
};

}  // namespace luxforge::service
