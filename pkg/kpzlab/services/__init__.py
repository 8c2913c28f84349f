from kpzlab.services.replica_runner import ReplicaBatch, run_replicas

__all__ = ["ReplicaBatch", "run_replicas"]
