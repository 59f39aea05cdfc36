#pragma once

// Umbrella header for the whole library.

#include "tweetmine/classify.hpp"
#include "tweetmine/corpus.hpp"
#include "tweetmine/csv.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/experiments.hpp"
#include "tweetmine/freq_tables.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/lengths.hpp"
#include "tweetmine/linear.hpp"
#include "tweetmine/model_io.hpp"
#include "tweetmine/naive_bayes.hpp"
#include "tweetmine/net.hpp"
#include "tweetmine/pos.hpp"
#include "tweetmine/record.hpp"
#include "tweetmine/rng.hpp"
#include "tweetmine/sparse.hpp"
#include "tweetmine/stats.hpp"
#include "tweetmine/stemmer.hpp"
#include "tweetmine/stopwords.hpp"
#include "tweetmine/strings.hpp"
#include "tweetmine/textprep.hpp"
#include "tweetmine/version.hpp"
#include "tweetmine/vocabulary.hpp"
#include "tweetmine/zipf.hpp"
