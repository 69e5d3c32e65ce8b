#include "seq2vec/serve.hpp"

#include <cctype>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "seq2vec/errors.hpp"

namespace seq2vec {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxPayloadBytes = 10 * 1024 * 1024;

// Same normalization the FASTA path applies: uppercase and U -> T.
std::string normalize_residues(const std::string& raw, std::string* problem) {
  std::string seq;
  seq.reserve(raw.size());
  for (char c : raw) {
    char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == 'U') u = 'T';
    if (u != 'A' && u != 'C' && u != 'G' && u != 'T') {
      *problem = "sequence contains characters outside A,C,G,T(,U)";
      return {};
    }
    seq += u;
  }
  if (seq.empty()) *problem = "empty sequence";
  return seq;
}

}  // namespace

struct InferenceServer::Impl {
  EmbeddingModel model;
  httplib::Server server;

  explicit Impl(EmbeddingModel m) : model(std::move(m)) {
    server.set_payload_max_length(kMaxPayloadBytes);

    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      json body = {
          {"k", model.vocab.k},
          {"dim", model.dim},
          {"vocab_size", model.vocab.size()},
      };
      res.set_content(body.dump(), "application/json");
    });

    server.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      json request;
      try {
        request = json::parse(req.body);
      } catch (const json::exception& e) {
        res.status = 400;
        res.set_content(json{{"error", std::string("malformed JSON: ") + e.what()}}.dump(),
                        "application/json");
        return;
      }
      if (!request.is_object() || !request.contains("sequences") ||
          !request["sequences"].is_array()) {
        res.status = 400;
        res.set_content(json{{"error", "expected {\"sequences\": [...]}"}}.dump(),
                        "application/json");
        return;
      }

      json embeddings = json::array();
      for (const auto& item : request["sequences"]) {
        std::string id;
        if (item.is_object() && item.contains("id") && item["id"].is_string())
          id = item["id"].get<std::string>();
        if (!item.is_object() || !item.contains("seq") || !item["seq"].is_string()) {
          embeddings.push_back({{"id", id}, {"error", "item needs a string \"seq\" field"}});
          continue;
        }
        std::string problem;
        const std::string residues =
            normalize_residues(item["seq"].get<std::string>(), &problem);
        if (!problem.empty()) {
          embeddings.push_back({{"id", id}, {"error", problem}});
          continue;
        }
        try {
          const SequenceEmbedding emb =
              embed_sequence(model, SequenceRecord{id, "", residues});
          json vec = json::array();
          for (float v : emb.vector) vec.push_back(static_cast<double>(v));
          embeddings.push_back({{"id", id},
                                {"vector", std::move(vec)},
                                {"kmers_used", emb.n_kmers_used},
                                {"kmers_unknown", emb.n_kmers_unknown}});
        } catch (const Error& e) {
          embeddings.push_back({{"id", id}, {"error", e.what()}});
        }
      }
      res.set_content(json{{"embeddings", std::move(embeddings)}}.dump(),
                      "application/json");
    });
  }
};

InferenceServer::InferenceServer(EmbeddingModel model)
    : impl_(std::make_unique<Impl>(std::move(model))) {}

InferenceServer::~InferenceServer() {
  if (impl_) impl_->server.stop();
}

bool InferenceServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int InferenceServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool InferenceServer::listen_after_bind() {
  return impl_->server.listen_after_bind();
}

bool InferenceServer::is_running() const { return impl_->server.is_running(); }

void InferenceServer::stop() { impl_->server.stop(); }

}  // namespace seq2vec
