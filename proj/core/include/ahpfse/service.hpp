#pragma once

#include "ahpfse/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace ahpfse {

struct ServiceResponse {
  int status = 200;
  nlohmann::ordered_json body;

  /// format_json(body); what goes over the wire.
  std::string text() const;
};

struct ServiceOptions {
  std::size_t undo_limit = 100;
};

/// One live analysis session over a working scenario.
///
/// Reads take a shared lock, writes an exclusive one, so writers are
/// serialized and no response observes a half-applied edit. Judgment edits
/// carry the revision token the client last saw; a stale token gets 409.
class ScenarioService {
 public:
  explicit ScenarioService(ScenarioDocument doc, ServiceOptions options = {});

  /// GET /api/scenario
  ServiceResponse get_scenario() const;
  /// PUT /api/periods/{period}/judgments/{i}/{j}; i and j are 1-based.
  ServiceResponse put_judgment(std::string_view period, std::string_view i, std::string_view j, std::string_view body);
  /// POST /api/periods/{period}/evaluate
  ServiceResponse post_evaluate(std::string_view period) const;
  /// POST /api/whatif; never modifies the working scenario.
  ServiceResponse post_whatif(std::string_view body) const;
  /// POST /api/undo; body may be empty or {"revision": token}.
  ServiceResponse post_undo(std::string_view body);

  std::string revision() const;
  /// Copy of the working scenario.
  Scenario working() const;

 private:
  struct Edit {
    std::string period;
    std::size_t row = 0;
    std::size_t col = 0;
    Judgment before;
    Judgment after;
  };

  std::string revision_locked() const;

  mutable std::shared_mutex mutex_;
  std::string session_id_;
  ServiceOptions options_;
  Scenario working_;
  std::deque<Edit> undo_;
  bool undo_overflowed_ = false;
  bool dirty_ = false;
  std::uint64_t revision_ = 1;
};

/// cpp-httplib server routing the /api endpoints to a ScenarioService and
/// serving `static_dir` (the UI bundle) at "/" when given.
class HttpFrontend {
 public:
  explicit HttpFrontend(ScenarioService& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port, -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ahpfse
