#include "gvgrg/arena.hpp"

#include <boost/asio.hpp>
#include <boost/beast.hpp>
#include <httplib.h>
#include <json.hpp>

#include <condition_variable>
#include <thread>

namespace gvgrg {

namespace asio = boost::asio;
namespace beast = boost::beast;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

std::string error_body(const std::string& message) { return json{{"error", message}}.dump(); }

/// Parses `{"gameIndex", "action"}` (or `{"gameIndex", "restart": true}`)
/// and plays it on the session.
std::string play_message(SessionManager& sessions, const std::string& id, const std::string& text)
{
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::exception&) {
    throw ArenaError(400, "message is not JSON");
  }
  if (!msg.is_object() || !msg.contains("gameIndex") || !msg["gameIndex"].is_number_integer())
    throw ArenaError(400, "gameIndex is required");
  int index = msg["gameIndex"].get<int>();
  if (msg.value("restart", false)) return sessions.restart(id, index);
  if (!msg.contains("action") || !msg["action"].is_string()) throw ArenaError(400, "action is required");
  return sessions.advance(id, index, msg["action"].get<std::string>());
}

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, SessionManager& sessions) : ws_(std::move(socket)), sessions_(sessions) {}

  void run()
  {
    beast::http::async_read(ws_.next_layer(), buf_, req_,
                            [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_request(ec); });
  }

 private:
  void on_request(beast::error_code ec)
  {
    if (ec) return;
    std::string target(req_.target());
    const std::string prefix = "/sessions/";
    int status = 0;
    if (!beast::websocket::is_upgrade(req_))
      status = 400;
    else if (target.rfind(prefix, 0) != 0)
      status = 404;
    else {
      id_ = target.substr(prefix.size());
      try {
        sessions_.describe(id_);
      } catch (const ArenaError& e) {
        status = e.status();
      }
    }
    if (status) return reject(status);
    ws_.async_accept(req_, [self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->read();
    });
  }

  void reject(int status)
  {
    auto res = std::make_shared<beast::http::response<beast::http::string_body>>(
        static_cast<beast::http::status>(status), req_.version());
    res->set(beast::http::field::content_type, "application/json");
    res->body() = error_body("websocket endpoint is /sessions/{id} for a live session");
    res->prepare_payload();
    beast::http::async_write(ws_.next_layer(), *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
      beast::error_code ignored;
      self->ws_.next_layer().shutdown(tcp::socket::shutdown_both, ignored);
    });
  }

  void read()
  {
    buf_.consume(buf_.size());
    ws_.async_read(buf_, [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
  }

  void on_read(beast::error_code ec)
  {
    if (ec) return;
    try {
      out_ = play_message(sessions_, id_, beast::buffers_to_string(buf_.data()));
    } catch (const ArenaError& e) {
      out_ = json{{"error", e.what()}, {"status", e.status()}}.dump();
    } catch (const std::exception& e) {
      out_ = json{{"error", e.what()}, {"status", 500}}.dump();
    }
    ws_.text(true);
    ws_.async_write(asio::buffer(out_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (!ec) self->read();
    });
  }

  beast::websocket::stream<tcp::socket> ws_;
  beast::flat_buffer buf_;
  beast::http::request<beast::http::string_body> req_;
  SessionManager& sessions_;
  std::string id_;
  std::string out_;
};

} // namespace

struct ArenaServer::Impl {
  Impl(ArenaConfig c, RulesetPool pool) : config(std::move(c)), sessions(std::move(pool), config.seed), votes(config.votes_file) {}

  ArenaConfig config;
  SessionManager sessions;
  VoteStore votes;
  httplib::Server http;
  asio::io_context ioc;
  std::optional<tcp::acceptor> acceptor;
  std::thread http_thread;
  std::thread ws_thread;
  int http_port = 0;
  int ws_bound = 0;
  bool running = false;
  std::mutex mu;
  std::condition_variable stopped;

  void accept()
  {
    acceptor->async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      std::make_shared<WsSession>(std::move(socket), sessions)->run();
      accept();
    });
  }

  template <typename F>
  void guarded(httplib::Response& res, F&& f)
  {
    try {
      res.set_content(f(), "application/json");
    } catch (const ArenaError& e) {
      res.status = e.status();
      res.set_content(error_body(e.what()), "application/json");
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(error_body(e.what()), "application/json");
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(error_body(e.what()), "application/json");
    }
  }

  static json body_json(const httplib::Request& req)
  {
    if (req.body.empty()) return json::object();
    auto j = json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ArenaError(400, "request body is not a JSON object");
    return j;
  }

  void routes()
  {
    http.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"ok":true})", "application/json");
    });
    http.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto body = body_json(req);
        if (!body.contains("game") || !body["game"].is_string()) throw ArenaError(400, "game is required");
        auto id = sessions.create(body["game"].get<std::string>());
        res.status = 201;
        return json{{"sessionId", id}, {"wsPort", ws_bound}}.dump();
      });
    });
    http.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.describe(req.matches[1]); });
    });
    http.Post(R"(/sessions/([0-9a-f]+)/restart/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.restart(req.matches[1], std::stoi(req.matches[2])); });
    });
    http.Post(R"(/sessions/([0-9a-f]+)/step)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return play_message(sessions, req.matches[1], req.body); });
    });
    http.Post(R"(/sessions/([0-9a-f]+)/vote)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto body = body_json(req);
        std::string id = req.matches[1];
        auto choice = parse_vote_choice(body.value("choice", ""));
        if (!choice) throw ArenaError(400, "choice must be first, second, both or neither");
        VoteRecord v;
        v.session_id = id;
        std::tie(v.generator_a, v.generator_b) = sessions.vote_target(id, &v.game);
        v.choice = *choice;
        v.comment = body.value("comment", "");
        v = votes.append(std::move(v));
        res.status = 201;
        return json{{"voteId", v.id},
                    {"generators", {generator_label(v.generator_a), generator_label(v.generator_b)}}}
            .dump();
      });
    });
    http.Get("/tally", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { return tally_preferences(votes.records()).json(); });
    });
  }
};

ArenaServer::ArenaServer(ArenaConfig config, RulesetPool pool)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(pool)))
{
  impl_->routes();
}

ArenaServer::~ArenaServer() { stop(); }

void ArenaServer::start()
{
  auto& m = *impl_;
  if (m.running) return;
  const auto& c = m.config;
  if (c.port == 0)
    m.http_port = m.http.bind_to_any_port(c.host);
  else if (m.http.bind_to_port(c.host, c.port))
    m.http_port = c.port;
  else
    m.http_port = -1;
  if (m.http_port <= 0) throw std::runtime_error("cannot bind HTTP port " + std::to_string(c.port));

  int ws = c.ws_port != 0 ? c.ws_port : (c.port == 0 ? 0 : c.port + 1);
  tcp::endpoint ep(asio::ip::make_address(c.host), static_cast<unsigned short>(ws));
  m.acceptor.emplace(m.ioc);
  m.acceptor->open(ep.protocol());
  m.acceptor->set_option(asio::socket_base::reuse_address(true));
  m.acceptor->bind(ep);
  m.acceptor->listen();
  m.ws_bound = m.acceptor->local_endpoint().port();
  m.accept();

  m.running = true;
  m.http_thread = std::thread([&m] { m.http.listen_after_bind(); });
  m.ws_thread = std::thread([&m] { m.ioc.run(); });
  m.http.wait_until_ready();
}

void ArenaServer::stop()
{
  auto& m = *impl_;
  {
    std::lock_guard lock(m.mu);
    if (!m.running) return;
    m.running = false;
  }
  m.http.stop();
  m.ioc.stop();
  if (m.http_thread.joinable()) m.http_thread.join();
  if (m.ws_thread.joinable()) m.ws_thread.join();
  m.stopped.notify_all();
}

void ArenaServer::wait()
{
  auto& m = *impl_;
  std::unique_lock lock(m.mu);
  m.stopped.wait(lock, [&] { return !m.running; });
}

int ArenaServer::port() const { return impl_->http_port; }
int ArenaServer::ws_port() const { return impl_->ws_bound; }
VoteStore& ArenaServer::votes() { return impl_->votes; }
SessionManager& ArenaServer::sessions() { return impl_->sessions; }

} // namespace gvgrg
