use crate::term::{parse_program, Dialect, ParseError, Program};

/// A bundled source file.
#[derive(Clone, Copy, Debug)]
pub struct ExampleProgram {
    pub name: &'static str,
    pub dialect: Dialect,
    pub source: &'static str,
}

impl ExampleProgram {
    pub fn file_name(&self) -> String {
        let ext = match self.dialect {
            Dialect::Lineal => "lineal",
            Dialect::LambdaS => "lams",
            Dialect::Odot => "sup",
        };
        format!("{}.{ext}", self.name)
    }

    pub fn parse(&self) -> Result<Program, ParseError> {
        parse_program(self.source, self.dialect)
    }
}

macro_rules! corpus {
    ($($name:literal : $dialect:ident = $file:literal),* $(,)?) => {
        vec![$(ExampleProgram {
            name: $name,
            dialect: Dialect::$dialect,
            source: include_str!(concat!("../../examples/programs/", $file)),
        }),*]
    };
}

/// The example programs shipped under `examples/programs`.
pub fn example_programs() -> Vec<ExampleProgram> {
    corpus![
        "hadamard": Lineal = "hadamard.lineal",
        "hadamard-applied": Lineal = "hadamard-applied.lineal",
        "collapse-without-thunk": Lineal = "collapse-without-thunk.lineal",
        "ybomb": Lineal = "ybomb.lineal",
        "thunk-release": Lineal = "thunk-release.lineal",
        "tensor": Lineal = "tensor.lineal",
        "hadamard": LambdaS = "hadamard.lams",
        "measure-demo": LambdaS = "measure-demo.lams",
        "distribute": LambdaS = "distribute.lams",
        "deutsch": LambdaS = "deutsch.lams",
        "deutsch-balanced": LambdaS = "deutsch-balanced.lams",
        "deutsch-constant": LambdaS = "deutsch-constant.lams",
        "deutsch-constant-measured": LambdaS = "deutsch-constant-measured.lams",
        "measure-demo": Odot = "measure-demo.sup",
        "qubit-odot": Odot = "qubit-odot.sup",
    ]
}
