"""L2-regularized logistic regression and linear hinge-loss SVM."""
from __future__ import annotations

import numpy as np
from scipy.special import expit


def logistic_loss(params, X, y, l2):
    """Mean log-loss plus (l2/2)*||w||^2; ``params`` is [w..., b]."""
    w, b = params[:-1], params[-1]
    z = X @ w + b
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))


def logistic_gradient(params, X, y, l2):
    w, b = params[:-1], params[-1]
    err = expit(X @ w + b) - y
    grad = np.empty_like(params)
    grad[:-1] = X.T @ err / len(y) + l2 * w
    grad[-1] = err.mean()
    return grad


class LogisticRegression:
    """Full-batch gradient descent with Armijo backtracking."""

    kind = "LogisticRegression"
    threshold = 0.5

    def __init__(self, l2=1e-4, max_epochs=500, tol=1e-8, seed=0):
        self.l2 = l2
        self.max_epochs = max_epochs
        self.tol = tol
        self.seed = seed
        self.coef_ = None
        self.intercept_ = 0.0
        self.loss_: list[float] = []

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        params = np.zeros(X.shape[1] + 1)
        loss = logistic_loss(params, X, y, self.l2)
        self.loss_ = [loss]
        step = 1.0
        for _ in range(self.max_epochs):
            g = logistic_gradient(params, X, y, self.l2)
            gg = float(np.dot(g, g))
            if gg < self.tol ** 2:
                break
            while True:
                trial = params - step * g
                trial_loss = logistic_loss(trial, X, y, self.l2)
                if trial_loss <= loss - 0.5 * step * gg or step < 1e-12:
                    break
                step *= 0.5
            if trial_loss > loss:
                break
            params, prev, loss = trial, loss, trial_loss
            self.loss_.append(loss)
            if prev - loss < self.tol * max(1.0, abs(loss)):
                break
            step = min(step * 2.0, 1e3)
        self.coef_ = params[:-1]
        self.intercept_ = float(params[-1])
        return self

    def decision_function(self, X):
        return expit(np.asarray(X, dtype=np.float64) @ self.coef_ + self.intercept_)

    def predict(self, X):
        return (self.decision_function(X) >= self.threshold).astype(np.int64)

    @property
    def feature_importances_(self):
        a = np.abs(self.coef_)
        s = a.sum()
        return a / s if s > 0 else np.full(len(a), 1.0 / len(a))

    def get_state(self):
        return {"coef": self.coef_.tolist(), "intercept": self.intercept_}

    def set_state(self, state):
        self.coef_ = np.asarray(state["coef"], dtype=np.float64)
        self.intercept_ = float(state["intercept"])


def hinge_objective(params, X, ypm, l2):
    """(l2/2)*||w||^2 + mean(max(0, 1 - y*(Xw + b))) with y in {-1, +1}."""
    w, b = params[:-1], params[-1]
    margin = ypm * (X @ w + b)
    return float(0.5 * l2 * np.dot(w, w) + np.mean(np.maximum(0.0, 1.0 - margin)))


class LinearSVM:
    """Deterministic full-batch subgradient descent on the primal hinge objective.

    A step is taken only if it lowers the objective (halving the step up to 40
    times), so the recorded objective never increases.
    """

    kind = "SupportVectorMachine"
    threshold = 0.0

    def __init__(self, l2=1e-3, epochs=200, step=1.0, seed=0):
        self.l2 = l2
        self.epochs = epochs
        self.step = step
        self.seed = seed
        self.coef_ = None
        self.intercept_ = 0.0
        self.objective_: list[float] = []

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        ypm = np.where(np.asarray(y) > 0, 1.0, -1.0)
        n, p = X.shape
        params = np.zeros(p + 1)
        obj = hinge_objective(params, X, ypm, self.l2)
        self.objective_ = [obj]
        for epoch in range(self.epochs):
            w, b = params[:-1], params[-1]
            active = ypm * (X @ w + b) < 1.0
            g = np.empty(p + 1)
            g[:-1] = self.l2 * w - (ypm[active] @ X[active]) / n
            g[-1] = -ypm[active].sum() / n
            step = self.step / np.sqrt(epoch + 1.0)
            for _ in range(40):
                trial = params - step * g
                trial_obj = hinge_objective(trial, X, ypm, self.l2)
                if trial_obj < obj:
                    params, obj = trial, trial_obj
                    break
                step *= 0.5
            self.objective_.append(obj)
        self.coef_ = params[:-1]
        self.intercept_ = float(params[-1])
        return self

    def decision_function(self, X):
        return np.asarray(X, dtype=np.float64) @ self.coef_ + self.intercept_

    def predict(self, X):
        return (self.decision_function(X) >= self.threshold).astype(np.int64)

    @property
    def feature_importances_(self):
        a = np.abs(self.coef_)
        s = a.sum()
        return a / s if s > 0 else np.full(len(a), 1.0 / len(a))

    def get_state(self):
        return {"coef": self.coef_.tolist(), "intercept": self.intercept_}

    def set_state(self, state):
        self.coef_ = np.asarray(state["coef"], dtype=np.float64)
        self.intercept_ = float(state["intercept"])
