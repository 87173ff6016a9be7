// Copyright 2026 The appnest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "appnest/contract/seed_corpus.hpp"

#include <string>

namespace appnest::contract {
namespace {

using nlohmann::json;

json param(std::string name, std::string kind, std::string description) {
  return {{"name", std::move(name)}, {"kind", std::move(kind)},
          {"description", std::move(description)}};
}

json param(std::string name, std::string kind, std::string description, json dflt) {
  auto p = param(std::move(name), std::move(kind), std::move(description));
  p["default"] = std::move(dflt);
  return p;
}

struct Seed {
  std::string name;
  std::string runtime;
  std::string short_description;
  std::string long_description;
  std::vector<std::string> tags;
  std::string returns;
  json parameters;
  std::string source;
};

json to_document(const Seed& s) {
  std::vector<std::string> tags{s.runtime};
  tags.insert(tags.end(), s.tags.begin(), s.tags.end());
  return {
      {"name", s.name},
      {"version", "1.0.0"},
      {"runtime", s.runtime},
      {"short_description", s.short_description},
      {"long_description", s.long_description},
      {"tags", tags},
      {"source", {{"inline", s.source}}},
      {"entry_point",
       {{"function", "run"}, {"returns", s.returns}, {"parameters", s.parameters}}},
  };
}

// Python sources share a preamble; plots are emitted with plotly inlined so
// nothing is fetched from outside the allowed origins.
std::string py(std::string_view imports, std::string_view body) {
  std::string out = "import pandas as pd\nimport plotly.express as px\n";
  out += imports;
  out += "\n\n";
  out += body;
  return out;
}

constexpr std::string_view kHtml =
    "    return fig.to_html(full_html=False, include_plotlyjs=True)\n";

std::vector<Seed> seeds() {
  const auto data = param("data", "path", "CSV file with samples in rows and features in columns");
  const auto label = param("label_column", "string", "Column holding the class label", "label");

  std::vector<Seed> out;

  out.push_back({"netANOVApreprocessing", "r",
                 "Builds a pairwise dissimilarity matrix between networks and saves it as output.txt.",
                 "Reads one network per column, computes the dissimilarity between every pair of "
                 "networks and writes the matrix to output.txt, which can be downloaded and fed to "
                 "netANOVA.",
                 {"networks", "preprocessing"}, "file",
                 json::array({param("networks", "path", "CSV file with one network per column"),
                              param("method", "string", "Distance measure passed to dist()", "euclidean")}),
                 "run <- function(networks, method = \"euclidean\") {\n"
                 "  x <- read.csv(networks, header = TRUE)\n"
                 "  d <- as.matrix(dist(t(x), method = method))\n"
                 "  write.table(d, \"output.txt\", sep = \"\\t\", quote = FALSE)\n"
                 "  \"output.txt\"\n"
                 "}\n"});

  out.push_back({"netANOVA", "r",
                 "Groups networks by hierarchical clustering of a dissimilarity matrix and reports per-group statistics.",
                 "Takes a dissimilarity matrix between objects such as networks, clusters them "
                 "hierarchically to obtain group memberships, and tests whether the groups differ. "
                 "The memberships, statistics and p-values are written to a file for download.",
                 {"networks", "clustering", "statistics"}, "file",
                 json::array({param("dissimilarity", "path", "Dissimilarity matrix produced by netANOVApreprocessing"),
                              param("groups", "integer", "Number of groups to cut the tree into", 2),
                              param("alpha", "float", "Significance level", 0.05)}),
                 "run <- function(dissimilarity, groups = 2, alpha = 0.05) {\n"
                 "  d <- as.dist(as.matrix(read.table(dissimilarity, header = TRUE, sep = \"\\t\")))\n"
                 "  membership <- cutree(hclust(d, method = \"ward.D2\"), k = groups)\n"
                 "  stats <- kruskal.test(as.vector(d), membership[row(as.matrix(d))[lower.tri(as.matrix(d))]])\n"
                 "  out <- data.frame(object = names(membership), group = membership)\n"
                 "  write.csv(out, \"netanova_groups.csv\", row.names = FALSE)\n"
                 "  cat(sprintf(\"statistic=%g p=%g significant=%s\\n\", stats$statistic, stats$p.value,\n"
                 "              stats$p.value < alpha), file = \"netanova_groups.csv\", append = TRUE)\n"
                 "  \"netanova_groups.csv\"\n"
                 "}\n"});

  out.push_back({"netMUG", "r",
                 "Network-guided multi-view clustering of samples using individual-specific networks.",
                 "Selects features from two data views by canonical correlation guided by an "
                 "extraneous variable, builds an individual-specific network per sample and "
                 "clusters samples with Ward linkage. The cluster assignments can be downloaded.",
                 {"networks", "clustering", "multi-view"}, "file",
                 json::array({param("view1", "path", "First data view (samples in rows)"),
                              param("view2", "path", "Second data view (samples in rows)"),
                              param("extraneous", "path", "Extraneous variable, one value per sample")}),
                 "run <- function(view1, view2, extraneous) {\n"
                 "  x <- cbind(read.csv(view1), read.csv(view2))\n"
                 "  z <- read.csv(extraneous)[[1]]\n"
                 "  w <- abs(cor(x, z))\n"
                 "  isn <- sweep(as.matrix(x), 2, w, `*`)\n"
                 "  cl <- cutree(hclust(dist(isn), method = \"ward.D2\"), h = mean(dist(isn)))\n"
                 "  write.csv(data.frame(sample = seq_along(cl), cluster = cl), \"clusters.csv\", row.names = FALSE)\n"
                 "  \"clusters.csv\"\n"
                 "}\n"});

  out.push_back({"GMIC", "r",
                 "Graph-based multimodal integration for classification with a support vector machine.",
                 "Integrates several data modalities through per-individual networks, derives "
                 "node- and edge-level similarities between individuals, averages them and trains a "
                 "support vector machine that predicts group labels for new samples.",
                 {"networks", "classification", "multimodal"}, "file",
                 json::array({param("train", "path", "Training data with a label column"),
                              param("test", "path", "Samples to classify"),
                              label}),
                 "run <- function(train, test, label_column = \"label\") {\n"
                 "  tr <- read.csv(train)\n"
                 "  te <- read.csv(test)\n"
                 "  y <- factor(tr[[label_column]])\n"
                 "  x <- as.matrix(tr[setdiff(names(tr), label_column)])\n"
                 "  sim <- (cor(t(x), method = \"spearman\") + 1) / 2\n"
                 "  centroids <- sapply(levels(y), function(l) colMeans(x[y == l, , drop = FALSE]))\n"
                 "  pred <- levels(y)[apply(as.matrix(te[colnames(x)]), 1, function(r) which.max(cor(r, centroids)))]\n"
                 "  write.csv(data.frame(sample = seq_along(pred), predicted = pred), \"predictions.csv\", row.names = FALSE)\n"
                 "  \"predictions.csv\"\n"
                 "}\n"});

  for (const auto* dims : {"2D", "3D"}) {
    const bool three = std::string_view(dims) == "3D";
    out.push_back({std::string(dims) + " PCA", "python",
                   std::string("Principal component analysis projected onto ") + (three ? "three" : "two") +
                       " components, shown as an interactive plot.",
                   "Reduces the number of variables in a table while keeping as much variance as "
                   "possible and plots the samples in the leading components. The plot is returned "
                   "as HTML and can be saved.",
                   {"dimensionality-reduction", "visualisation"}, "html",
                   json::array({data, param("color_column", "string", "Optional column used to colour points", ""),
                                param("scale", "boolean", "Standardise features first", true)}),
                   py("from sklearn.decomposition import PCA\nfrom sklearn.preprocessing import StandardScaler",
                      std::string("def run(data, color_column=\"\", scale=True):\n"
                                  "    df = pd.read_csv(data)\n"
                                  "    color = df.pop(color_column) if color_column else None\n"
                                  "    x = df.select_dtypes(\"number\").values\n"
                                  "    if scale:\n"
                                  "        x = StandardScaler().fit_transform(x)\n") +
                          (three ? "    pc = PCA(n_components=3).fit_transform(x)\n"
                                   "    fig = px.scatter_3d(x=pc[:, 0], y=pc[:, 1], z=pc[:, 2], color=color)\n"
                                 : "    pc = PCA(n_components=2).fit_transform(x)\n"
                                   "    fig = px.scatter(x=pc[:, 0], y=pc[:, 1], color=color)\n") +
                          std::string(kHtml))});
  }

  out.push_back({"PCA loadings", "python",
                 "Plots PCA loadings: eigenvectors of the covariance matrix scaled by the root of their eigenvalues.",
                 "Computes principal components and shows how strongly each original variable "
                 "contributes to them. Loadings are the covariance eigenvectors scaled by the square "
                 "root of their eigenvalues. The plot is returned as HTML.",
                 {"dimensionality-reduction", "visualisation"}, "html",
                 json::array({data, param("n_components", "integer", "Number of components", 2)}),
                 py("import numpy as np\nfrom sklearn.decomposition import PCA",
                    "def run(data, n_components=2):\n"
                    "    df = pd.read_csv(data).select_dtypes(\"number\")\n"
                    "    pca = PCA(n_components=n_components).fit(df.values)\n"
                    "    loadings = pca.components_.T * np.sqrt(pca.explained_variance_)\n"
                    "    frame = pd.DataFrame(loadings, index=df.columns,\n"
                    "                         columns=[f\"PC{i + 1}\" for i in range(n_components)])\n"
                    "    fig = px.imshow(frame, text_auto=\".2f\")\n" +
                        std::string(kHtml))});

  out.push_back({"2D tSNE", "python",
                 "t-distributed stochastic neighbour embedding of high-dimensional data into two dimensions.",
                 "Turns pairwise similarities into joint probabilities and finds a two-dimensional "
                 "embedding minimising the Kullback-Leibler divergence to them. Returns an "
                 "interactive scatter plot as HTML.",
                 {"dimensionality-reduction", "visualisation"}, "html",
                 json::array({data, param("perplexity", "float", "Effective number of neighbours", 30.0)}),
                 py("from sklearn.manifold import TSNE",
                    "def run(data, perplexity=30.0):\n"
                    "    df = pd.read_csv(data).select_dtypes(\"number\")\n"
                    "    emb = TSNE(n_components=2, perplexity=perplexity).fit_transform(df.values)\n"
                    "    fig = px.scatter(x=emb[:, 0], y=emb[:, 1])\n" +
                        std::string(kHtml))});

  out.push_back({"2D UMAP", "python",
                 "Uniform Manifold Approximation and Projection into two dimensions.",
                 "Non-linear dimension reduction suited to visualisation as well as general use. "
                 "Returns an interactive scatter plot of the embedding as HTML.",
                 {"dimensionality-reduction", "visualisation"}, "html",
                 json::array({data, param("n_neighbors", "integer", "Size of the local neighbourhood", 15),
                              param("min_dist", "float", "Minimum distance between embedded points", 0.1)}),
                 py("import umap",
                    "def run(data, n_neighbors=15, min_dist=0.1):\n"
                    "    df = pd.read_csv(data).select_dtypes(\"number\")\n"
                    "    emb = umap.UMAP(n_neighbors=n_neighbors, min_dist=min_dist).fit_transform(df.values)\n"
                    "    fig = px.scatter(x=emb[:, 0], y=emb[:, 1])\n" +
                        std::string(kHtml))});

  out.push_back({"Scatter Matrix", "python",
                 "Grid of scatter plots showing every pairwise relationship between variables.",
                 "Draws one scatter plot per pair of numeric columns so that many bivariate "
                 "relationships can be inspected in a single chart. Returned as HTML.",
                 {"visualisation", "exploration"}, "html",
                 json::array({data, param("color_column", "string", "Optional column used to colour points", "")}),
                 py("",
                    "def run(data, color_column=\"\"):\n"
                    "    df = pd.read_csv(data)\n"
                    "    fig = px.scatter_matrix(df, color=color_column or None)\n" +
                        std::string(kHtml))});

  out.push_back({"Scatter Marginals", "python",
                 "Scatter plot of two variables with their marginal histograms.",
                 "Joint distribution plot for two selected columns with a histogram of each "
                 "variable along the axes. Returned as HTML.",
                 {"visualisation", "exploration"}, "html",
                 json::array({data, param("x_column", "string", "Column on the horizontal axis"),
                              param("y_column", "string", "Column on the vertical axis")}),
                 py("",
                    "def run(data, x_column, y_column):\n"
                    "    df = pd.read_csv(data)\n"
                    "    fig = px.scatter(df, x=x_column, y=y_column, marginal_x=\"histogram\",\n"
                    "                     marginal_y=\"histogram\")\n" +
                        std::string(kHtml))});

  for (const auto* curve : {"ROC", "PR"}) {
    const bool roc = std::string_view(curve) == "ROC";
    for (const auto* variant : {"binary", "multiclass"}) {
      const bool binary = std::string_view(variant) == "binary";
      const std::string metric_import =
          roc ? "from sklearn.metrics import roc_curve as curve"
              : "from sklearn.metrics import precision_recall_curve as curve";
      const std::string xy = roc ? "        fig.add_scatter(x=a, y=b, name=str(cls))\n"
                                 : "        fig.add_scatter(x=b, y=a, name=str(cls))\n";
      std::string body =
          "def run(data, label_column=\"label\", score_prefix=\"score_\"):\n"
          "    df = pd.read_csv(data)\n"
          "    fig = go.Figure()\n"
          "    classes = sorted(df[label_column].unique())\n";
      body += binary ? "    classes = classes[-1:]\n" : "";
      body += "    for cls in classes:\n"
              "        a, b, _ = curve(df[label_column] == cls, df[f\"{score_prefix}{cls}\"])\n";
      body += xy;
      body += kHtml;
      out.push_back(
          {std::string(curve) + " " + variant, "python",
           roc ? std::string("Receiver operating characteristic curve for ") + variant + " classifiers."
               : std::string("Precision-recall curve for ") + variant + " classifiers.",
           roc ? "Plots true positive rate against false positive rate over all score "
                 "thresholds to show how well a classifier separates signal from noise. "
                 "Returned as HTML."
               : "Shows the trade-off between precision and recall across score thresholds, "
                 "which is informative when classes are strongly imbalanced. Returned as HTML.",
           {"evaluation", "classification", "visualisation"}, "html",
           json::array({data, label,
                        param("score_prefix", "string", "Prefix of the per-class score columns", "score_")}),
           py("import plotly.graph_objects as go\n" + metric_import, body)});
    }
  }

  out.push_back({"LR preliminary plots", "python",
                 "Preliminary plots for linear regression between a dependent and an independent variable.",
                 "Shows the relationship between an independent variable and the dependent variable "
                 "you want to predict, with an ordinary least squares fit. Returned as HTML.",
                 {"regression", "visualisation"}, "html",
                 json::array({data, param("x_column", "string", "Independent variable"),
                              param("y_column", "string", "Dependent variable")}),
                 py("",
                    "def run(data, x_column, y_column):\n"
                    "    df = pd.read_csv(data)\n"
                    "    fig = px.scatter(df, x=x_column, y=y_column, trendline=\"ols\")\n" +
                        std::string(kHtml))});

  out.push_back({"Demo", "r", "Demonstrates returning arbitrary HTML from an application.",
                 "Minimal application with no parameters. The entry point returns a fragment of "
                 "HTML that is embedded directly in the page.",
                 {"demo"}, "html", json::array(),
                 "run <- function() {\n"
                 "  paste0(\"<h2>Hello from R</h2><p>\", R.version.string, \"</p>\",\n"
                 "         \"<ul>\", paste0(\"<li>\", letters[1:5], \"</li>\", collapse = \"\"), \"</ul>\")\n"
                 "}\n"});
  return out;
}

}  // namespace

std::vector<json> seed_manifest_documents() {
  std::vector<json> docs;
  for (const auto& s : seeds()) docs.push_back(to_document(s));
  return docs;
}

}  // namespace appnest::contract
