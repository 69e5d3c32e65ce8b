#pragma once

#include <memory>
#include <string>

#include "seq2vec/embedder.hpp"

namespace seq2vec {

// Batch-inference HTTP endpoint over an immutable model.
//
//   GET  /health -> {"k":..., "dim":..., "vocab_size":...}
//   POST /embed  <- {"sequences":[{"id":"...","seq":"ACGT..."}, ...]}
//                -> {"embeddings":[{"id","vector","kmers_used","kmers_unknown"}
//                                  | {"id","error"}, ...]}
//
// Per-item failures (too short, bad residues, no coverage) are reported
// inline without failing the batch. Malformed JSON gets 400; bodies above
// 10 MB get 413.
class InferenceServer {
 public:
  explicit InferenceServer(EmbeddingModel model);
  ~InferenceServer();
  InferenceServer(const InferenceServer&) = delete;
  InferenceServer& operator=(const InferenceServer&) = delete;

  // Blocking listen on a fixed port.
  bool listen(const std::string& host, int port);

  // For tests and ephemeral deployments: bind to a free port (returns it),
  // then serve on the current thread with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();

  bool is_running() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace seq2vec
