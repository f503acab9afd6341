#ifndef CHECKWORTHY_CHECKWORTHY_HPP_
#define CHECKWORTHY_CHECKWORTHY_HPP_

#include "checkworthy/checkpoint.hpp"
#include "checkworthy/cnn.hpp"
#include "checkworthy/dataset_io.hpp"
#include "checkworthy/errors.hpp"
#include "checkworthy/features.hpp"
#include "checkworthy/metrics.hpp"
#include "checkworthy/model.hpp"
#include "checkworthy/optim.hpp"
#include "checkworthy/pipeline.hpp"
#include "checkworthy/preprocess.hpp"
#include "checkworthy/presets.hpp"
#include "checkworthy/rng.hpp"
#include "checkworthy/tensor.hpp"
#include "checkworthy/vocab.hpp"

#endif  // CHECKWORTHY_CHECKWORTHY_HPP_
