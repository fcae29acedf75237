"""Command line: pretrain, train, serve, and synth (corpus generation)."""

from __future__ import annotations

import argparse
import sys

from .labels import LabelError
from .train import ModelSize, PretrainConfig, TrainingConfig, pretrain, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qx-model-server",
        description="Train and serve the BERT question tagger.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pretrain", help="masked-LM pretrain an encoder on "
                                        "unlabeled CoNLL tokens")
    p.add_argument("--data", required=True, help="CoNLL file (tags ignored)")
    p.add_argument("--epochs", type=int, default=45)
    p.add_argument("--lr", type=float, default=7e-4)
    p.add_argument("--batch", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hidden", type=int, default=512)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--out", required=True, help="encoder output directory")

    p = sub.add_parser("train", help="fine-tune the token classifier")
    p.add_argument("--data", required=True, help="CoNLL training file")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--lr", type=float, default=2e-5)
    p.add_argument("--batch", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--momentum", type=float, default=0.9)
    p.add_argument("--dropout", type=float, default=0.1)
    p.add_argument("--max-seq-len", type=int, default=512)
    p.add_argument("--pretrained", help="encoder directory from 'pretrain'")
    p.add_argument("--out", required=True, help="checkpoint directory")

    p = sub.add_parser("serve", help="serve a checkpoint at POST /v1/tag")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)

    p = sub.add_parser("synth", help="write the synthetic overfit corpora")
    p.add_argument("--train-out", required=True)
    p.add_argument("--pretrain-out", required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=19)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "pretrain":
            cfg = PretrainConfig(epochs=args.epochs, learning_rate=args.lr,
                                 batch_size=args.batch, seed=args.seed,
                                 size=ModelSize(hidden_size=args.hidden,
                                                num_layers=args.layers))
            log = pretrain(args.data, args.out, cfg)
            print(f"pretrained on {log['documents']} documents; final MLM "
                  f"loss {log['epoch_losses'][-1]:.3f}")
        elif args.command == "train":
            cfg = TrainingConfig(epochs=args.epochs, learning_rate=args.lr,
                                 batch_size=args.batch, seed=args.seed,
                                 momentum=args.momentum, dropout=args.dropout,
                                 max_seq_len=args.max_seq_len)
            log = train(args.data, args.out, cfg, args.pretrained)
            print(f"trained on {log['documents']} documents; loss "
                  f"{log['epoch_losses'][0]:.2f} -> "
                  f"{log['epoch_losses'][-1]:.2f}; train token accuracy "
                  f"{log['train_token_accuracy']:.3f}")
        elif args.command == "serve":
            from .server import serve

            serve(args.checkpoint, args.host, args.port)
        elif args.command == "synth":
            from .synthetic import write_overfit_corpus

            write_overfit_corpus(args.train_out, args.pretrain_out,
                                 n_train=args.count, seed=args.seed)
            print(f"wrote {args.train_out} and {args.pretrain_out}")
    except (LabelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
