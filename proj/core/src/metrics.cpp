#include "sae/metrics.hpp"

#include "sae/error.hpp"

namespace sae {

void ConfusionMatrix::add(Prognosis predicted, Prognosis actual) noexcept {
  if (actual == Prognosis::good) {
    ++(predicted == Prognosis::good ? tp : fn);
  } else {
    ++(predicted == Prognosis::good ? fp : tn);
  }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) noexcept {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("cannot compute metrics on an empty confusion matrix");
  Metrics m;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  if (cm.tp + cm.fn > 0) {
    m.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  }
  if (cm.tn + cm.fp > 0) {
    m.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
  }
  return m;
}

}  // namespace sae
