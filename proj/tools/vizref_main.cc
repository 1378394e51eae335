// Copyright 2026 The Vizref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// vizref: corpus generation, tagger training and tagging, evaluation and
// the session service.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "vizref/corpus.h"
#include "vizref/crf.h"
#include "vizref/errors.h"
#include "vizref/evaluation.h"
#include "vizref/generator.h"
#include "vizref/http_service.h"
#include "vizref/resources.h"
#include "vizref/session.h"
#include "vizref/spans.h"

namespace {

using namespace vizref;

struct DataFlags {
  std::string dir = VIZREF_DATA_DIR;
  std::string ontology;
  std::string embeddings;
  std::string table;

  void Register(CLI::App* cmd) {
    cmd->add_option("--data-dir", dir, "Directory with the default fixtures");
    cmd->add_option("--ontology", ontology, "Ontology JSON");
    cmd->add_option("--embeddings", embeddings, "Word embeddings, word2vec text format");
    cmd->add_option("--table", table, "Incident table CSV");
  }
  ResourcePaths Paths() const {
    ResourcePaths paths = ResourcePaths::InDirectory(dir);
    if (!ontology.empty()) paths.ontology = ontology;
    if (!embeddings.empty()) paths.embeddings = embeddings;
    if (!table.empty()) paths.table = table;
    return paths;
  }
};

KnowledgeOntology LoadOntologyFrom(const DataFlags& flags) {
  return LoadOntology(flags.Paths().ontology);
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::vector<std::string> lines;
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw ArgumentError("cannot open " + path);
    in = &file;
  }
  for (std::string line; std::getline(*in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out << text;
}

HttpService* g_service = nullptr;

void HandleSignal(int) {
  if (g_service) g_service->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference resolution for multimodal visualization dialogue"};
  app.require_subcommand(1);

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Generate the synthetic annotated corpus");
  GeneratorConfig gen_config;
  std::string gen_out;
  DataFlags gen_data;
  gen->add_option("--seed", gen_config.seed, "Generator seed")->capture_default_str();
  gen->add_option("--sessions", gen_config.sessions, "Number of sessions")->capture_default_str();
  gen->add_option("--out", gen_out, "Output JSONL path")->required();
  gen_data.Register(gen);

  // vocab
  auto* vocab = app.add_subcommand("vocab", "List every word the generator can emit");
  std::string vocab_out = "-";
  DataFlags vocab_data;
  vocab->add_option("--out", vocab_out, "Output path, - for stdout");
  vocab_data.Register(vocab);

  // train
  auto* train = app.add_subcommand("train", "Train the reference tagger");
  std::string train_corpus, train_out;
  TrainConfig train_config;
  train->add_option("--corpus", train_corpus, "Corpus JSONL")->required();
  train->add_option("--out", train_out, "Model output path")->required();
  train->add_option("--c1", train_config.c1, "L1 coefficient")->capture_default_str();
  train->add_option("--c2", train_config.c2, "L2 coefficient")->capture_default_str();
  train->add_option("--max-iterations", train_config.max_iterations)->capture_default_str();

  // tag
  auto* tag = app.add_subcommand("tag", "Tag referring expressions, one utterance per line");
  std::string tag_model, tag_in = "-";
  tag->add_option("--model", tag_model, "Model path")->required();
  tag->add_option("--in", tag_in, "Utterance file, - for stdin");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate detection, resolution and slots");
  std::string eval_corpus, eval_model, eval_report, eval_vector = "soft", eval_decay = "linear";
  std::vector<std::string> eval_windows = {"0", "1", "inf"};
  double eval_cutoff = 0.2;
  std::size_t eval_threads = 1;
  DataFlags eval_data;
  eval->add_option("--corpus", eval_corpus, "Corpus JSONL")->required();
  eval->add_option("--model", eval_model, "Tagger model; gold tags when omitted");
  eval->add_option("--window", eval_windows, "Window sizes: 0, 1, ..., inf")->capture_default_str();
  eval->add_option("--vector-mode", eval_vector, "hard or soft")
      ->check(CLI::IsMember({"hard", "soft"}))
      ->capture_default_str();
  eval->add_option("--decay", eval_decay, "linear or flat")
      ->check(CLI::IsMember({"linear", "flat"}))
      ->capture_default_str();
  eval->add_option("--cutoff", eval_cutoff, "Resolution score cutoff")->capture_default_str();
  eval->add_option("--threads", eval_threads, "Worker threads")->capture_default_str();
  eval->add_option("--report", eval_report, "Write <path>.txt and <path>.json");
  eval_data.Register(eval);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  std::string serve_host = "127.0.0.1", serve_model, serve_transcripts;
  int serve_port = 8080;
  DataFlags serve_data;
  serve->add_option("--host", serve_host)->capture_default_str();
  serve->add_option("--port", serve_port, "Port, 0 for any free port")->capture_default_str();
  serve->add_option("--model", serve_model, "Tagger model; trained on the fixture when omitted");
  serve->add_option("--transcripts", serve_transcripts, "Directory for per-session transcripts");
  serve_data.Register(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const KnowledgeOntology ontology = LoadOntologyFrom(gen_data);
      const auto corpus = GenerateSyntheticCorpus(ontology, gen_config);
      SaveCorpus(corpus, gen_out);
      std::cout << corpus.size() << " records in " << SessionRanges(corpus).size()
                << " sessions\n";
    } else if (*vocab) {
      const KnowledgeOntology ontology = LoadOntologyFrom(vocab_data);
      std::set<std::string> words;
      for (const auto& w : GeneratorVocabulary()) words.insert(w);
      for (const auto& slot : ontology.slots()) {
        for (const auto& term : slot.terms) {
          for (const auto& w : SplitWords(term)) words.insert(w);
        }
      }
      std::string text;
      for (const auto& w : words) text += w + "\n";
      if (vocab_out == "-") {
        std::cout << text;
      } else {
        WriteText(vocab_out, text);
      }
    } else if (*train) {
      const auto corpus = LoadCorpus(train_corpus);
      const auto tagged = ToTaggedUtterances(corpus);
      const TrainResult result = TrainCrf(tagged, train_config);
      SaveModel(result.model, train_out);
      std::cout << "iterations " << result.iterations << (result.converged ? " converged" : "")
                << "\nutterances " << result.used_utterances << " (skipped "
                << result.skipped_all_outside << " all-O)\nfeatures "
                << result.model.num_features() << "\nloss " << result.loss_history.back()
                << "\n";
    } else if (*tag) {
      const CrfModel model = LoadModel(tag_model);
      for (const auto& line : ReadLines(tag_in)) {
        const Utterance u = PrepareUtterance(line);
        const auto tags = Decode(model, u.tokens);
        for (std::size_t i = 0; i < u.tokens.size(); ++i) {
          std::cout << (i ? " " : "") << u.tokens[i].surface << '/' << TagName(tags[i]);
        }
        std::cout << '\n';
      }
    } else if (*eval) {
      const Resources resources(eval_data.Paths());
      const auto corpus = LoadCorpus(eval_corpus);
      std::optional<CrfModel> model;
      if (!eval_model.empty()) model = LoadModel(eval_model);
      EvalConfig config;
      config.model = model ? &*model : nullptr;
      config.windows.clear();
      for (const auto& w : eval_windows) config.windows.push_back(Window::Parse(w));
      config.mode = ParseVectorMode(eval_vector);
      config.decay = eval_decay;
      config.cutoff = eval_cutoff;
      config.threads = eval_threads;
      const EvalReport report =
          RunFullEval(corpus, resources.extractor(), resources.table(), config);
      const std::string text = ReportToText(report);
      std::cout << text;
      if (!eval_report.empty()) {
        WriteText(eval_report + ".txt", text);
        WriteText(eval_report + ".json", ReportToJson(report).dump(2) + "\n");
      }
    } else if (*serve) {
      const Resources resources(serve_data.Paths());
      CrfModel model;
      if (!serve_model.empty()) {
        model = LoadModel(serve_model);
      } else {
        std::cerr << "training tagger on the synthetic fixture\n";
        const auto corpus = GenerateSyntheticCorpus(resources.ontology());
        const auto tagged = ToTaggedUtterances(corpus);
        model = TrainCrf(tagged).model;
      }
      std::optional<std::filesystem::path> transcripts;
      if (!serve_transcripts.empty()) {
        transcripts = serve_transcripts;
        std::filesystem::create_directories(*transcripts);
      }
      SessionManager sessions(resources.extractor(), model, resources.table(), transcripts);
      HttpService service(sessions);
      const int port = service.Bind(serve_host, serve_port);
      std::cout << "listening on http://" << serve_host << ':' << port << std::endl;
      g_service = &service;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      service.Listen();
      g_service = nullptr;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
